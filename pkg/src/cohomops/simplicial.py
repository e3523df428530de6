"""Finite simplicial complexes with a global vertex order.

A simplex is a strictly increasing tuple of non-negative vertex ids. Inside
each dimension simplices are kept in lexicographic order, and that order is
the basis order of every chain/cochain group and boundary matrix.
"""
from __future__ import annotations

import re
from itertools import combinations
from typing import Iterable, Sequence

from .exact_algebra import Matrix

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "ComplexParseError",
    "parse_complex",
    "format_complex",
    "closure_from_maximal",
    "boundary_matrix",
    "faces",
    "collapse_thin",
]

Simplex = tuple  # strictly increasing tuple of vertex ids

_INT = re.compile(r"[0-9]+")


class ComplexParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def check_simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(int(v) for v in vertices)
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    if s[0] < 0:
        raise ValueError(f"negative vertex id in {s}")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError(f"vertices of {s} are not strictly increasing")
    return s


def faces(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces, ``i``-th entry omits vertex ``i``."""
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))] if len(simplex) > 1 else []


class SimplicialComplex:
    """Immutable face-closed collection of simplices."""

    __slots__ = ("_simplices", "_index", "_hash")

    def __init__(self, simplices_by_dim: Sequence[Sequence[Simplex]]):
        # trusted constructor: lists must be closed, deduplicated and sorted
        self._simplices = tuple(tuple(level) for level in simplices_by_dim)
        while self._simplices and not self._simplices[-1]:
            self._simplices = self._simplices[:-1]
        self._index = tuple({s: k for k, s in enumerate(level)} for level in self._simplices)
        self._hash = None

    @property
    def dimension(self) -> int:
        return len(self._simplices) - 1

    def simplices(self, q: int) -> tuple[Simplex, ...]:
        if 0 <= q < len(self._simplices):
            return self._simplices[q]
        return ()

    def n_simplices(self, q: int) -> int:
        return len(self.simplices(q))

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self._simplices)

    def index(self, simplex: Simplex) -> int:
        return self._index[len(simplex) - 1][simplex]

    def __contains__(self, simplex) -> bool:
        q = len(simplex) - 1
        return 0 <= q < len(self._index) and tuple(simplex) in self._index[q]

    def __iter__(self):
        for level in self._simplices:
            yield from level

    def __len__(self) -> int:
        return sum(self.f_vector)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices(0))

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in enumerate(self.f_vector))

    def maximal_simplices(self) -> list[Simplex]:
        covered = set()
        for level in self._simplices[1:]:
            for s in level:
                covered.update(faces(s))
        return [s for s in self if s not in covered]

    def cofaces(self, simplex: Simplex) -> list[Simplex]:
        """Simplices one dimension up having ``simplex`` as a face."""
        q = len(simplex)
        if q >= len(self._simplices):
            return []
        sset = set(simplex)
        return [s for s in self._simplices[q] if sset.issubset(s)]

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._simplices == other._simplices

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._simplices)
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex(f_vector={self.f_vector})"


def closure_from_maximal(maximal: Iterable[Iterable[int]]) -> SimplicialComplex:
    """All nonempty faces of the given simplices, deduplicated and sorted."""
    by_dim: dict[int, set] = {}
    for raw in maximal:
        s = check_simplex(raw)
        q = len(s) - 1
        if s in by_dim.get(q, ()):
            continue
        for k in range(1, len(s) + 1):
            by_dim.setdefault(k - 1, set()).update(combinations(s, k))
    top = max(by_dim, default=-1)
    return SimplicialComplex([sorted(by_dim.get(q, ())) for q in range(top + 1)])


def parse_complex(text: str) -> SimplicialComplex:
    """Parse the line-oriented maximal-simplex format.

    ``#`` starts a comment line, blank lines are skipped, and every other
    line is a strictly increasing list of vertex ids separated by single
    spaces.
    """
    maximal = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line or line.startswith("#"):
            continue
        tokens = line.split(" ")
        for tok in tokens:
            if not _INT.fullmatch(tok):
                raise ComplexParseError(lineno, f"not a non-negative integer: {tok!r}")
        verts = [int(t) for t in tokens]
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise ComplexParseError(lineno, "vertices are not strictly increasing")
        maximal.append(tuple(verts))
    if not maximal:
        raise ComplexParseError(0, "empty input: no simplices")
    return closure_from_maximal(maximal)


def format_complex(K: SimplicialComplex) -> str:
    return "".join(" ".join(map(str, s)) + "\n" for s in sorted(K.maximal_simplices()))


def boundary_matrix(K: SimplicialComplex, q: int, modulus: int = 0) -> Matrix:
    """Matrix of the boundary map C_q -> C_{q-1} in lexicographic bases."""
    if not 1 <= q <= K.dimension:
        raise ValueError(f"boundary_matrix needs 1 <= q <= {K.dimension}, got {q}")
    lower = K._index[q - 1]
    rows: dict[int, dict[int, int]] = {}
    for j, s in enumerate(K.simplices(q)):
        for i, face in enumerate(faces(s)):
            rows.setdefault(lower[face], {})[j] = -1 if i % 2 else 1
    return Matrix(K.n_simplices(q - 1), K.n_simplices(q), rows, modulus)


# --------------------------------------------------------------------------
# collapses


def collapse_thin(K: SimplicialComplex, modulus: int = 0):
    """Collapse free pairs until none remain.

    A face ``tau`` is free when it lies in exactly one other simplex
    ``sigma`` (necessarily of dimension ``dim tau + 1``). Each step removes
    the free pair with lexicographically smallest ``tau``. Returns the
    thinned complex and the composite contraction of C_*(K) onto it.
    """
    import heapq

    from .complexes import Contraction, chain_complex

    alive = set(K)
    # alive codimension-one cofaces; a face of a higher simplex always has
    # at least two of them, so exactly one means free
    up: dict[Simplex, set] = {s: set() for s in K}
    for s in K:
        for f in faces(s):
            up[f].add(s)
    heap = [s for s in K if len(up[s]) == 1]
    heapq.heapify(heap)
    removed: list[tuple[Simplex, Simplex, int]] = []
    while heap:
        tau = heapq.heappop(heap)
        if tau not in alive or len(up[tau]) != 1:
            continue
        (sigma,) = up[tau]
        missing = next(i for i, v in enumerate(sigma) if v not in tau)
        eps = -1 if missing % 2 else 1
        removed.append((tau, sigma, eps))
        alive.discard(tau)
        alive.discard(sigma)
        for f in faces(sigma):
            up[f].discard(sigma)
        for f in faces(tau):
            up[f].discard(tau)
        for f in faces(sigma) + faces(tau):
            if f in alive and len(up[f]) == 1:
                heapq.heappush(heap, f)

    thin = SimplicialComplex([
        [s for s in K.simplices(q) if s in alive] for q in range(K.dimension + 1)])

    # f(x) as sparse chains over alive simplices, phi(x) over K
    f_img: dict[Simplex, dict[Simplex, int]] = {s: {s: 1} for s in K}
    phi_img: dict[Simplex, dict[Simplex, int]] = {}
    holders: dict[Simplex, set[Simplex]] = {s: {s} for s in K}
    p = modulus
    for tau, sigma, eps in removed:
        # elementary collapse: tau -> tau - eps * d(sigma), sigma -> 0, phi(tau) = eps * sigma
        sub = {}
        for i, face in enumerate(faces(sigma)):
            if face != tau:
                sub[face] = -eps * (-1 if i % 2 else 1)
        for x in list(holders[sigma]):
            f_img[x].pop(sigma, None)
        holders[sigma] = set()
        for x in list(holders[tau]):
            chain = f_img[x]
            coef = chain.pop(tau, 0)
            if not coef:
                continue
            ph = phi_img.setdefault(x, {})
            ph[sigma] = ph.get(sigma, 0) + eps * coef
            if p:
                ph[sigma] %= p
            if not ph[sigma]:
                del ph[sigma]
            for face, v in sub.items():
                w = chain.get(face, 0) + coef * v
                if p:
                    w %= p
                if w:
                    chain[face] = w
                    holders[face].add(x)
                else:
                    chain.pop(face, None)
                    holders[face].discard(x)
        holders[tau] = set()

    N = chain_complex(K, modulus)
    M = chain_complex(thin, modulus)
    f, g, phi = {}, {}, {}
    for q in range(K.dimension + 1):
        big, small = K.simplices(q), thin.simplices(q)
        rows: dict[int, dict[int, int]] = {}
        for j, x in enumerate(big):
            for y, v in f_img[x].items():
                rows.setdefault(thin.index(y), {})[j] = v
        f[q] = Matrix(len(small), len(big), rows, modulus)
        g[q] = Matrix(len(big), len(small),
                      {K.index(y): {k: 1} for k, y in enumerate(small)}, modulus)
        rows = {}
        for j, x in enumerate(big):
            for y, v in phi_img.get(x, {}).items():
                rows.setdefault(K.index(y), {})[j] = v
        phi[q] = Matrix(K.n_simplices(q + 1), len(big), rows, modulus)
    return thin, Contraction(N, M, f, g, phi)

