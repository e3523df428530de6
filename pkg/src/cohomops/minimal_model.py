"""Algebraic minimal models of simplicial chain complexes.

The model is built degree by degree: at step q the boundary map of C_q(K)
into the model so far is put in Smith normal form, every unit diagonal
entry pairs a q-chain ``a_i`` with a model generator ``e_i = d(a_i)``, and
both are split off. The contraction (f, g, phi) of C_*(K) onto the model
is updated alongside, with ``phi(e_i) = a_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .complexes import (
    Chain,
    ChainComplex,
    Cochain,
    Contraction,
    chain_complex,
)
from .exact_algebra import Matrix, smith_normal_form
from .simplicial import SimplicialComplex, boundary_matrix

__all__ = [
    "MinimalModel",
    "GroupPresentation",
    "CohomologyBasis",
    "IntegralCohomology",
    "build_minimal_model",
    "minimal_model",
    "homology_presentations",
    "cohomology_basis",
    "integral_cohomology",
]


@dataclass(frozen=True)
class GroupPresentation:
    """``Z^free_rank + Z/t_1 + ...`` (or ``(Z/p)^free_rank`` over a field)."""

    free_rank: int
    torsion: tuple[int, ...] = ()
    modulus: int = 0

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion


@dataclass
class MinimalModel:
    """Minimal chain complex with generators remembered as chains of K."""

    complex: SimplicialComplex
    modulus: int
    ranks: tuple[int, ...]
    differentials: dict[int, Matrix]
    inclusion: dict[int, Matrix] = field(repr=False)

    @property
    def chain_complex(self) -> ChainComplex:
        return ChainComplex(self.ranks, self.differentials, self.modulus, -1)

    def generators(self, q: int) -> list[Chain]:
        """The chain of C_q(K) each degree-q generator stands for (its image under g)."""
        if not 0 <= q < len(self.ranks):
            return []
        cols = self.inclusion[q].columns()
        return [Chain._trusted(self.complex, q,
                               {self.complex.simplices(q)[i]: v for i, v in col.items()},
                               self.modulus)
                for col in cols]

    def is_minimal(self) -> bool:
        return all(1 not in smith_normal_form(m).diagonal for m in self.differentials.values())


def build_minimal_model(K: SimplicialComplex, modulus: int = 0) -> tuple[MinimalModel, Contraction]:
    """Minimal model of C_*(K) over Z (``modulus=0``) or Z/p, with its contraction."""
    N = chain_complex(K, modulus)
    top = K.dimension
    if top < 0:
        empty = MinimalModel(K, modulus, (), {}, {})
        return empty, Contraction(N, empty.chain_complex)

    n0 = K.n_simplices(0)
    f = {0: Matrix.identity(n0, modulus)}
    g = {0: Matrix.identity(n0, modulus)}
    phi: dict[int, Matrix] = {}
    dM: dict[int, Matrix] = {}
    ranks = [n0]

    for q in range(1, top + 1):
        nq = K.n_simplices(q)
        f_prev = f[q - 1]
        m_prev = f_prev.nrows
        d = f_prev @ boundary_matrix(K, q, modulus)
        snf = smith_normal_form(d)
        t = snf.n_units
        keep = range(t, m_prev)
        paired = range(t)
        UF = snf.U @ f_prev
        f[q - 1] = UF.select_rows(keep)
        U_keep = snf.U_inv.select_cols(keep)
        g[q - 1] = g[q - 1] @ U_keep
        if q - 1 in dM:
            dM[q - 1] = dM[q - 1] @ U_keep
        phi[q - 1] = snf.V.select_cols(paired) @ UF.select_rows(paired)
        f[q] = snf.V_inv.select_rows(range(t, nq))
        g[q] = snf.V.select_cols(range(t, nq))
        dM[q] = snf.D.select_rows(keep).select_cols(range(t, nq))
        ranks[q - 1] = m_prev - t
        ranks.append(nq - t)

    model = MinimalModel(K, modulus, tuple(ranks), dM, dict(g))
    return model, Contraction(N, model.chain_complex, f, g, phi)


@lru_cache(maxsize=64)
def minimal_model(K: SimplicialComplex, modulus: int = 0) -> tuple[MinimalModel, Contraction]:
    """Cached :func:`build_minimal_model`; treat the result as read-only."""
    return build_minimal_model(K, modulus)


def homology_presentations(M: MinimalModel) -> list[GroupPresentation]:
    """H_q for every degree, read off the model's differentials."""
    out = []
    ranks, diffs = M.ranks, M.differentials
    snfs = {q: smith_normal_form(m) for q, m in diffs.items()}
    for q, m in enumerate(ranks):
        r_in = snfs[q + 1].rank if q + 1 in snfs else 0
        r_out = snfs[q].rank if q in snfs else 0
        torsion = ()
        if q + 1 in snfs and not M.modulus:
            torsion = tuple(d for d in snfs[q + 1].diagonal if d > 1)
        out.append(GroupPresentation(m - r_in - r_out, torsion, M.modulus))
    return out


@dataclass
class CohomologyBasis:
    """Basis of H^q(K; Z/p) with representative cocycles and the projection f*."""

    complex: SimplicialComplex
    degree: int
    modulus: int
    representatives: list[Cochain]
    projection: Matrix  # f*: C^q(K) -> model coordinates

    def __len__(self) -> int:
        return len(self.representatives)

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coordinates(self, c: Cochain) -> list[int]:
        """Class of the cocycle ``c`` in this basis."""
        if c.degree != self.degree:
            raise ValueError(f"cochain of degree {c.degree}, basis of degree {self.degree}")
        if c.modulus != self.modulus:
            c = c.reduce(self.modulus)
        return self.projection.dot(c.to_vector())

    def cocycle(self, coords: Sequence[int]) -> Cochain:
        """Representative g*(x) of the class with the given coordinates."""
        if len(coords) != len(self.representatives):
            raise ValueError(f"expected {len(self.representatives)} coordinates")
        out = Cochain.zero(self.complex, self.degree, self.modulus)
        for k, rep in zip(coords, self.representatives):
            if k % self.modulus:
                out = out + rep * k
        return out


def _cochain_rows(K, q, mat: Matrix, modulus) -> list[Cochain]:
    basis = K.simplices(q)
    return [Cochain._trusted(K, q, {basis[j]: v for j, v in mat.row(i).items()}, modulus)
            for i in range(mat.nrows)]


def cohomology_basis(K: SimplicialComplex, p: int, q: int) -> CohomologyBasis:
    """H^q(K; Z/p) from the dual of the mod-p minimal-model contraction.

    Representatives are g*(e_k) = e_k o f (rows of f); f*(c) = c o g.
    """
    model, r = minimal_model(K, p)
    if not 0 <= q <= K.dimension:
        return CohomologyBasis(K, q, p, [], Matrix.zeros(0, K.n_simplices(q), p))
    return CohomologyBasis(K, q, p, _cochain_rows(K, q, r.F(q), p), r.G(q).T)


@dataclass
class IntegralCohomology:
    """H^q(K; Z) with one integral representative cocycle per generator.

    ``orders[k]`` is 0 for a free generator and the torsion order otherwise.
    """

    complex: SimplicialComplex
    degree: int
    presentation: GroupPresentation
    representatives: list[Cochain]
    orders: list[int]
    _to_coords: Matrix = field(repr=False)

    def __len__(self) -> int:
        return len(self.representatives)

    def coordinates(self, c: Cochain) -> list[int]:
        """Coordinates of the class of an integral cocycle (torsion parts reduced)."""
        raw = self._to_coords.dot(c.lift().to_vector() if c.modulus else c.to_vector())
        return [v % o if o else v for v, o in zip(raw, self.orders)]

    def cocycle(self, coords: Sequence[int]) -> Cochain:
        out = Cochain.zero(self.complex, self.degree, 0)
        for k, rep in zip(coords, self.representatives):
            if k:
                out = out + rep * k
        return out


def integral_cohomology(K: SimplicialComplex, q: int) -> IntegralCohomology:
    """H^q(K; Z) computed on the dual of the integral minimal model."""
    model, r = minimal_model(K, 0)
    m = model.ranks[q] if 0 <= q < len(model.ranks) else 0
    n = K.n_simplices(q)
    if m == 0:
        return IntegralCohomology(K, q, GroupPresentation(0), [], [], Matrix.zeros(0, n))
    Mc = model.chain_complex
    delta_out = Mc.d(q + 1).T        # M^q -> M^{q+1}
    delta_in = Mc.d(q).T             # M^{q-1} -> M^q
    snf = smith_normal_form(delta_out)
    ell = snf.rank
    Z = snf.V.select_cols(range(ell, m))             # cocycle basis, model coords
    to_Z = snf.V_inv.select_rows(range(ell, m))
    B = to_Z @ delta_in
    snf_b = smith_normal_form(B)
    k = Z.ncols
    diag = snf_b.diagonal + [0] * (k - snf_b.rank)
    kept = [i for i in range(k) if diag[i] != 1]
    gens = Z @ snf_b.U_inv.select_cols(kept)          # model coords, one column each
    reps_mat = (r.F(q).T @ gens).T                     # rows: cochains on K
    reps = _cochain_rows(K, q, reps_mat, 0)
    orders = [diag[i] for i in kept]
    to_coords = snf_b.U.select_rows(kept) @ to_Z @ r.G(q).T
    torsion = tuple(o for o in orders if o)
    pres = GroupPresentation(sum(1 for o in orders if not o), torsion, 0)
    return IntegralCohomology(K, q, pres, reps, orders, to_coords)
