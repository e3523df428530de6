"""Cohomology operations as matrices between fixed cohomology bases.

A class is pushed to the cochain level with g*, the cochain operation is
applied, and the result is read back with f* of the target model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .cochain_ops import cup, cup_i, p1_cochain, psi_cochain, sq_cochain
from .complexes import Cochain, coboundary
from .exact_algebra import _rref, is_prime, kernel_basis, solve_in_span
from .minimal_model import (
    CohomologyBasis,
    IntegralCohomology,
    cohomology_basis,
    integral_cohomology,
    minimal_model,
)
from .simplicial import SimplicialComplex

__all__ = [
    "ConsistencyError",
    "OperationMatrix",
    "SecondaryValue",
    "Sq2Kernel",
    "operation_matrix",
    "sq_matrix",
    "p1_matrix",
    "cup_table",
    "sq2_kernel",
    "adem_secondary",
    "column_space",
]


class ConsistencyError(RuntimeError):
    """An internal invariant failed (e.g. an operation produced a non-cocycle)."""


def column_space(matrix: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Reduced echelon basis of the span of the columns."""
    nrows = len(matrix)
    cols = [[matrix[i][j] % p for i in range(nrows)] for j in range(ncols)]
    basis, _ = _rref(cols, nrows, p) if cols and nrows else ([], [])
    return basis


@dataclass
class OperationMatrix:
    """Matrix of a cohomology operation H^source -> H^target over Z/p.

    Column j holds the target coordinates of the image of source generator j.
    """

    source_degree: int
    target_degree: int
    modulus: int
    matrix: list[list[int]]
    n_source: int
    n_target: int
    kernel: list[list[int]] = field(default_factory=list)
    image: list[list[int]] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_target, self.n_source)

    @property
    def rank(self) -> int:
        return len(self.image)

    def apply(self, coords: Sequence[int]) -> list[int]:
        p = self.modulus
        return [sum(a * b for a, b in zip(row, coords)) % p for row in self.matrix]


def _assemble(columns: list[list[int]], n_target: int, p: int):
    n_source = len(columns)
    matrix = [[columns[j][i] % p for j in range(n_source)] for i in range(n_target)]
    if n_target:
        kernel = kernel_basis(matrix, p)
    else:
        kernel = [[int(k == j) for k in range(n_source)] for j in range(n_source)]
    return matrix, kernel, column_space(matrix, n_source, p)


def _checked(out: Cochain, what: str) -> Cochain:
    if not coboundary(out).is_zero():
        raise ConsistencyError(f"{what} did not produce a cocycle")
    return out


def operation_matrix(K: SimplicialComplex, op: Callable[[Cochain], Cochain], q: int, p: int,
                     name: str = "operation") -> OperationMatrix:
    """Matrix of the cohomology operation induced by a cochain operation ``op``.

    ``op`` must send mod-p q-cocycles to mod-p cocycles of a fixed degree.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    source = cohomology_basis(K, p, q)
    images = [_checked(op(rep), name) for rep in source.representatives]
    if images:
        target_degree = images[0].degree
    else:
        target_degree = op(Cochain.zero(K, q, p)).degree
    target = cohomology_basis(K, p, target_degree)
    columns = [target.coordinates(c) if len(target) else [] for c in images]
    matrix, kernel, image = _assemble(columns, len(target), p)
    return OperationMatrix(q, target_degree, p, matrix, len(source), len(target), kernel, image)


def sq_matrix(K: SimplicialComplex, i: int, q: int) -> OperationMatrix:
    """Sq^i : H^q(K; Z/2) -> H^{q+i}(K; Z/2)."""
    return operation_matrix(K, lambda c: sq_cochain(c, i), q, 2, name=f"Sq^{i}")


def p1_matrix(K: SimplicialComplex, p: int, q: int) -> OperationMatrix:
    """P_1 : H^q(K; Z/p) -> H^{pq-1}(K; Z/p) for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"P_1 needs an odd prime, got {p}")
    return operation_matrix(K, lambda c: p1_cochain(c, p), q, p, name="P_1")


def cup_table(K: SimplicialComplex, p: int, q1: int, q2: int) -> dict[tuple[int, int], list[int]]:
    """Coordinates of ``e_i cup e_j`` in H^{q1+q2} for all basis pairs."""
    a, b = cohomology_basis(K, p, q1), cohomology_basis(K, p, q2)
    target = cohomology_basis(K, p, q1 + q2)
    table = {}
    for i, x in enumerate(a.representatives):
        for j, y in enumerate(b.representatives):
            prod = _checked(cup(x, y), "cup")
            table[i, j] = target.coordinates(prod) if len(target) else []
    return table


# --------------------------------------------------------------------------
# integral classes and the secondary operation


def _sq2_columns(classes: Sequence[Cochain], target: CohomologyBasis) -> list[list[int]]:
    cols = []
    for c in classes:
        c2 = c.reduce(2)
        img = _checked(cup_i(c2, c2, c.degree - 2), "Sq^2")
        cols.append(target.coordinates(img) if len(target) else [])
    return cols


@dataclass
class Sq2Kernel:
    """Classes of H^q(K; Z) killed by Sq^2, given as 0/1 combinations of generators."""

    cohomology: IntegralCohomology
    matrix: OperationMatrix
    basis: list[list[int]]

    @property
    def representatives(self) -> list[Cochain]:
        return [self.cohomology.cocycle(v) for v in self.basis]

    def __len__(self) -> int:
        return len(self.basis)


def sq2_kernel(K: SimplicialComplex, q: int) -> Sq2Kernel:
    """Kernel of Sq^2 : H^q(K; Z) -> H^{q+2}(K; Z/2)."""
    H = integral_cohomology(K, q)
    target = cohomology_basis(K, 2, q + 2)
    columns = _sq2_columns(H.representatives, target)
    matrix, kernel, image = _assemble(columns, len(target), 2)
    om = OperationMatrix(q, q + 2, 2, matrix, len(H), len(target), kernel, image)
    return Sq2Kernel(H, om, kernel)


@dataclass
class SecondaryValue:
    """A coset ``representative + span(indeterminacy)`` in H^degree(K; Z/2)."""

    degree: int
    representative: list[int]
    indeterminacy: list[list[int]]

    def _span_matrix(self) -> list[list[int]]:
        n = len(self.representative)
        return [[v[i] for v in self.indeterminacy] for i in range(n)]

    def contains(self, coords: Sequence[int]) -> bool:
        diff = [(a - b) % 2 for a, b in zip(coords, self.representative)]
        if not any(diff):
            return True
        if not self.indeterminacy:
            return False
        return solve_in_span(self._span_matrix(), diff, 2) is not None

    def is_zero(self) -> bool:
        return self.contains([0] * len(self.representative))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SecondaryValue):
            return NotImplemented
        return (self.degree == other.degree
                and len(self.representative) == len(other.representative)
                and self.contains(other.representative))


def _as_integral_cocycle(K, alpha, H: IntegralCohomology) -> Cochain:
    if isinstance(alpha, Cochain):
        if alpha.modulus != 0:
            raise ValueError("the class must be given by an integral cocycle")
        if not coboundary(alpha).is_zero():
            raise ValueError("the given cochain is not a cocycle")
        return alpha
    coords = list(alpha)
    if len(coords) != len(H):
        raise ValueError(f"expected {len(H)} coordinates for H^{H.degree}(K; Z), got {len(coords)}")
    return H.cocycle(coords)


def adem_secondary(K: SimplicialComplex, alpha: Union[Sequence[int], Cochain],
                   b: Optional[Cochain] = None, q: int = 2) -> SecondaryValue:
    """Adem's secondary operation on a class of the kernel of Sq^2 in degree 2.

    ``alpha`` is a coordinate vector over the generators of H^2(K; Z) or an
    integral representative cocycle. ``b`` defaults to phi*(Sq^2 c) from the
    mod-2 contraction; any mod-2 3-cochain with delta b = c cup c is allowed.
    The value lives in H^5(K; Z/2) modulo Sq^2 H^3(K; Z/2).
    """
    if q != 2:
        raise NotImplementedError("only the degree-2 secondary operation is available")
    H = integral_cohomology(K, q)
    c = _as_integral_cocycle(K, alpha, H)
    c2 = c.reduce(2)
    x = cup_i(c2, c2, q - 2)
    model2, r2 = minimal_model(K, 2)
    h4 = cohomology_basis(K, 2, q + 2)
    if len(h4) and any(h4.coordinates(x)):
        raise ValueError("Sq^2 alpha != 0: the class is not in the kernel of Sq^2")
    if b is None:
        # phi* on C^{q+2} is the transpose of phi : C_{q+1} -> C_{q+2}
        phi = r2.Phi(q + 1)
        b = Cochain.from_vector(K, q + 1, phi.T.dot(x.to_vector()), 2)
        if coboundary(b) != x:
            raise ConsistencyError("delta phi*(Sq^2 c) != Sq^2 c")
    psi = _checked(psi_cochain(c, b), "psi")
    target = cohomology_basis(K, 2, q + 3)
    value = target.coordinates(psi) if len(target) else []
    indeterminacy = sq_matrix(K, 2, q + 1).image if len(target) else []
    return SecondaryValue(q + 3, value, indeterminacy)
