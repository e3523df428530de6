"""Chains, cochains and contractions between (co)chain complexes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .exact_algebra import Matrix
from .simplicial import SimplicialComplex, Simplex, boundary_matrix, faces

__all__ = [
    "Chain",
    "Cochain",
    "boundary",
    "coboundary",
    "ChainComplex",
    "chain_complex",
    "Contraction",
    "identity_contraction",
    "dualize_contraction",
    "check_contraction",
    "compose_contractions",
]


class _Graded:
    """Sparse simplex -> coefficient map of a fixed degree."""

    __slots__ = ("complex", "degree", "modulus", "values")

    def __init__(self, complex: SimplicialComplex, degree: int,
                 values: Optional[Mapping[Simplex, int]] = None, modulus: int = 0):
        self.complex = complex
        self.degree = int(degree)
        self.modulus = int(modulus)
        clean = {}
        for s, v in (values or {}).items():
            s = tuple(s)
            if len(s) != self.degree + 1:
                raise ValueError(f"simplex {s} has the wrong dimension for degree {degree}")
            if s not in complex:
                raise ValueError(f"simplex {s} is not in the complex")
            if self.modulus:
                v %= self.modulus
            if v:
                clean[s] = v
        self.values: dict[Simplex, int] = clean

    @classmethod
    def _trusted(cls, complex, degree, values, modulus):
        obj = cls.__new__(cls)
        obj.complex, obj.degree, obj.modulus, obj.values = complex, degree, modulus, values
        return obj

    @classmethod
    def zero(cls, complex, degree, modulus=0):
        return cls._trusted(complex, degree, {}, modulus)

    @classmethod
    def from_vector(cls, complex, degree, vec: Sequence[int], modulus=0):
        basis = complex.simplices(degree)
        if len(vec) != len(basis):
            raise ValueError(f"expected {len(basis)} coordinates, got {len(vec)}")
        p = modulus
        values = {}
        for s, v in zip(basis, vec):
            v = int(v)
            if p:
                v %= p
            if v:
                values[s] = v
        return cls._trusted(complex, degree, values, modulus)

    def to_vector(self) -> list[int]:
        return [self.values.get(s, 0) for s in self.complex.simplices(self.degree)]

    def __getitem__(self, simplex) -> int:
        return self.values.get(tuple(simplex), 0)

    def _like(self, values):
        return type(self)._trusted(self.complex, self.degree, values, self.modulus)

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ValueError(f"ring mismatch: {self.modulus} vs {other.modulus}")
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check(other)
        p = self.modulus
        out = dict(self.values)
        for s, v in other.values.items():
            w = out.get(s, 0) + v
            if p:
                w %= p
            if w:
                out[s] = w
            else:
                out.pop(s, None)
        return self._like(out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        p = self.modulus
        out = {}
        for s, v in self.values.items():
            w = v * k
            if p:
                w %= p
            if w:
                out[s] = w
        return self._like(out)

    __rmul__ = __mul__

    def reduce(self, p: int):
        """Coefficients reduced mod ``p`` (from Z, or from a multiple of p)."""
        return type(self)(self.complex, self.degree, self.values, p)

    def lift(self):
        """Same representatives ``0..p-1`` viewed as integers."""
        return type(self)._trusted(self.complex, self.degree, dict(self.values), 0)

    def is_zero(self) -> bool:
        return not self.values

    def support(self) -> list[Simplex]:
        return sorted(self.values)

    def __eq__(self, other):
        return (type(other) is type(self) and self.degree == other.degree
                and self.modulus == other.modulus and self.values == other.values
                and self.complex == other.complex)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        ring = f"Z/{self.modulus}" if self.modulus else "Z"
        terms = " + ".join(f"{v}*{list(s)}" for s, v in sorted(self.values.items())) or "0"
        return f"{type(self).__name__}[{self.degree}, {ring}]({terms})"


class Chain(_Graded):
    """A q-chain: formal combination of q-simplices."""

    __slots__ = ()


class Cochain(_Graded):
    """A q-cochain in dual-basis coordinates: ``values[s] == c(s)``."""

    __slots__ = ()

    def __call__(self, arg) -> int:
        if isinstance(arg, Chain):
            if arg.degree != self.degree:
                raise ValueError("degree mismatch in cochain evaluation")
            total = sum(self.values.get(s, 0) * v for s, v in arg.values.items())
            return total % self.modulus if self.modulus else total
        return self.values.get(tuple(arg), 0)


def boundary(a: Chain) -> Chain:
    if a.degree == 0:
        return Chain.zero(a.complex, -1, a.modulus)
    p = a.modulus
    out: dict[Simplex, int] = {}
    for s, v in a.values.items():
        for i, f in enumerate(faces(s)):
            w = out.get(f, 0) + (-v if i % 2 else v)
            out[f] = w % p if p else w
    return Chain._trusted(a.complex, a.degree - 1, {f: v for f, v in out.items() if v}, p)


def coboundary(c: Cochain) -> Cochain:
    """``(delta c)(sigma) = c(boundary sigma)`` on every (q+1)-simplex."""
    K, p = c.complex, c.modulus
    out = {}
    if c.values:
        for s in K.simplices(c.degree + 1):
            total = 0
            for i, f in enumerate(faces(s)):
                v = c.values.get(f)
                if v:
                    total += -v if i % 2 else v
            if p:
                total %= p
            if total:
                out[s] = total
    return Cochain._trusted(K, c.degree + 1, out, p)


# --------------------------------------------------------------------------
# complexes and contractions


@dataclass(frozen=True)
class ChainComplex:
    """Free graded module with one differential per degree.

    ``direction`` is -1 for chain complexes (d_q : C_q -> C_{q-1}) and +1
    for cochain complexes (d^q : C^q -> C^{q+1}). ``differentials[q]`` is
    the matrix of the map leaving degree q; missing degrees are zero maps.
    """

    ranks: tuple[int, ...]
    differentials: Mapping[int, Matrix]
    modulus: int = 0
    direction: int = -1

    def rank(self, q: int) -> int:
        return self.ranks[q] if 0 <= q < len(self.ranks) else 0

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def d(self, q: int) -> Matrix:
        m = self.differentials.get(q)
        if m is not None:
            return m
        return Matrix.zeros(self.rank(q + self.direction), self.rank(q), self.modulus)

    def identity(self, q: int) -> Matrix:
        return Matrix.identity(self.rank(q), self.modulus)

    def dual(self) -> "ChainComplex":
        diffs = {q + self.direction: m.T for q, m in self.differentials.items()}
        return ChainComplex(self.ranks, diffs, self.modulus, -self.direction)


def chain_complex(K: SimplicialComplex, modulus: int = 0) -> ChainComplex:
    diffs = {q: boundary_matrix(K, q, modulus) for q in range(1, K.dimension + 1)}
    return ChainComplex(K.f_vector, diffs, modulus, -1)


@dataclass
class Contraction:
    """(f, g, phi) from a big complex ``big`` onto a small complex ``small``.

    ``f[q]``: big_q -> small_q, ``g[q]``: small_q -> big_q and ``phi[q]``:
    big_q -> big_{q - direction} (raises degree on chains, lowers it on
    cochains). Missing entries are zero maps.
    """

    big: ChainComplex
    small: ChainComplex
    f: dict[int, Matrix] = field(default_factory=dict)
    g: dict[int, Matrix] = field(default_factory=dict)
    phi: dict[int, Matrix] = field(default_factory=dict)

    @property
    def modulus(self) -> int:
        return self.big.modulus

    def F(self, q: int) -> Matrix:
        m = self.f.get(q)
        if m is not None:
            return m
        return Matrix.zeros(self.small.rank(q), self.big.rank(q), self.modulus)

    def G(self, q: int) -> Matrix:
        m = self.g.get(q)
        if m is not None:
            return m
        return Matrix.zeros(self.big.rank(q), self.small.rank(q), self.modulus)

    def Phi(self, q: int) -> Matrix:
        m = self.phi.get(q)
        if m is not None:
            return m
        return Matrix.zeros(self.big.rank(q - self.big.direction), self.big.rank(q), self.modulus)

    def degrees(self) -> range:
        return range(max(self.big.top, self.small.top) + 1)


def identity_contraction(N: ChainComplex) -> Contraction:
    eye = {q: N.identity(q) for q in range(N.top + 1)}
    return Contraction(N, N, dict(eye), dict(eye), {})


def dualize_contraction(r: Contraction) -> Contraction:
    """(f*, g*, phi*) on the Hom complexes: transposes of g, f and phi.

    In dual-basis coordinates f*(c) = c o g, g*(c') = c' o f and
    phi*(c) = c o phi. Dualizing twice gives back the original matrices.
    """
    s = r.big.direction
    f_star = {q: m.T for q, m in r.g.items()}
    g_star = {q: m.T for q, m in r.f.items()}
    # phi maps big_q -> big_{q-s}; its transpose leaves degree q-s
    phi_star = {q - s: m.T for q, m in r.phi.items()}
    return Contraction(r.big.dual(), r.small.dual(), f_star, g_star, phi_star)


def compose_contractions(outer: Contraction, inner: Contraction) -> Contraction:
    """Contraction N -> P from ``outer``: N -> M and ``inner``: M -> P.

    f = f2 f1, g = g1 g2, phi = phi1 + g1 phi2 f1.
    """
    N = outer.big
    s = N.direction
    f, g, phi = {}, {}, {}
    for q in range(N.top + 1):
        f[q] = inner.F(q) @ outer.F(q)
        g[q] = outer.G(q) @ inner.G(q)
        phi[q] = outer.Phi(q) + outer.G(q - s) @ inner.Phi(q) @ outer.F(q)
    return Contraction(N, inner.small, f, g, phi)


def check_contraction(r: Contraction) -> list[str]:
    """Every violated contraction identity, as ``"<identity> in degree q"``.

    The empty list means f g = 1, 1 - g f = phi d + d phi, phi g = 0,
    f phi = 0, phi phi = 0 and that f, g commute with the differentials.
    """
    N, M = r.big, r.small
    s = N.direction
    problems = []
    for q in r.degrees():
        F, G, P = r.F(q), r.G(q), r.Phi(q)
        if not (F @ G) == M.identity(q):
            problems.append(f"fg = 1 fails in degree {q}")
        lhs = N.identity(q) - G @ F
        rhs = r.Phi(q + s) @ N.d(q) + N.d(q - s) @ P
        if not lhs == rhs:
            problems.append(f"1 - gf = phi d + d phi fails in degree {q}")
        if not (P @ G).is_zero():
            problems.append(f"phi g = 0 fails in degree {q}")
        if not (r.F(q - s) @ P).is_zero():
            problems.append(f"f phi = 0 fails in degree {q}")
        if not (r.Phi(q - s) @ P).is_zero():
            problems.append(f"phi phi = 0 fails in degree {q}")
        if not r.F(q + s) @ N.d(q) == M.d(q) @ F:
            problems.append(f"f d = d f fails in degree {q}")
        if not N.d(q) @ G == r.G(q + s) @ M.d(q):
            problems.append(f"g d = d g fails in degree {q}")
    return problems
