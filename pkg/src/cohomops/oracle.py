"""Independent checks: brute-force Betti numbers, fixture complexes, random complexes.

Nothing here touches Smith normal forms or contractions; Betti numbers come
from plain Gaussian elimination mod p on coboundary matrices assembled from
scratch.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

import numpy as np

from .simplicial import SimplicialComplex, closure_from_maximal, parse_complex

__all__ = [
    "Fixture",
    "FixtureError",
    "betti_oracle",
    "betti_numbers",
    "fixtures",
    "fixture",
    "random_complex",
    "validate_fixture",
]


def _rank_mod_p(A: np.ndarray, p: int) -> int:
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        r += 1
    return r


def _coboundary_array(K: SimplicialComplex, q: int, p: int) -> np.ndarray:
    """delta^q : C^q -> C^{q+1} with rows indexed by (q+1)-simplices."""
    src = K.simplices(q)
    dst = K.simplices(q + 1)
    pos = {s: j for j, s in enumerate(src)}
    A = np.zeros((len(dst), len(src)), dtype=np.int64)
    for i, s in enumerate(dst):
        for k in range(len(s)):
            A[i, pos[s[:k] + s[k + 1:]]] = 1 if k % 2 == 0 else p - 1
    return A


def betti_oracle(K: SimplicialComplex, p: int, q: int) -> int:
    """dim H^q(K; Z/p) = dim ker delta^q - rank delta^{q-1}."""
    n = K.n_simplices(q)
    if n == 0:
        return 0
    r_out = _rank_mod_p(_coboundary_array(K, q, p), p) if K.n_simplices(q + 1) else 0
    r_in = _rank_mod_p(_coboundary_array(K, q - 1, p), p) if q >= 1 else 0
    return n - r_out - r_in


def betti_numbers(K: SimplicialComplex, p: int) -> tuple[int, ...]:
    return tuple(betti_oracle(K, p, q) for q in range(K.dimension + 1))


# --------------------------------------------------------------------------
# fixtures


class FixtureError(AssertionError):
    pass


@dataclass
class Fixture:
    """A named test complex with classically known homology.

    ``homology_z[q]`` is ``(free rank, torsion tuple)``; ``betti[p]`` lists
    dim H^q(K; Z/p).
    """

    name: str
    complex: SimplicialComplex
    homology_z: tuple[tuple[int, tuple[int, ...]], ...]
    betti: dict[int, tuple[int, ...]]
    euler: int
    surface: bool = False
    tags: frozenset = field(default_factory=frozenset)

    def __repr__(self):
        return f"Fixture({self.name!r}, f_vector={self.complex.f_vector})"


def pseudomanifold_problems(K: SimplicialComplex) -> list[str]:
    """Codimension-one faces not lying in exactly two top simplices."""
    n = K.dimension
    counts = Counter(f for s in K.simplices(n) for f in combinations(s, n))
    return [f"{f} lies in {counts[f]} top simplices" for f in K.simplices(n - 1) if counts[f] != 2]


def closed_surface_problems(K: SimplicialComplex) -> list[str]:
    """Reasons ``K`` is not a closed pseudo-surface (empty when it is one)."""
    problems = []
    if K.dimension != 2:
        problems.append(f"dimension {K.dimension}, expected 2")
    counts = Counter(e for t in K.simplices(2) for e in combinations(t, 2))
    for e in K.simplices(1):
        if counts[e] != 2:
            problems.append(f"edge {e} lies in {counts[e]} triangles")
    return problems


def validate_fixture(fx: Fixture) -> None:
    """Raise FixtureError unless ``fx`` passes every check that applies to it."""
    K = fx.complex
    if closure_from_maximal(K.maximal_simplices()) != K:
        raise FixtureError(f"{fx.name}: not face-closed")
    if K.euler_characteristic() != fx.euler:
        raise FixtureError(f"{fx.name}: Euler characteristic {K.euler_characteristic()} != {fx.euler}")
    if fx.surface or "closed" in fx.tags:
        problems = closed_surface_problems(K) if fx.surface else pseudomanifold_problems(K)
        if problems:
            raise FixtureError(f"{fx.name}: " + "; ".join(problems[:3]))
    for p, expected in fx.betti.items():
        got = betti_numbers(K, p)
        if got != expected:
            raise FixtureError(f"{fx.name}: Betti numbers mod {p} are {got}, expected {expected}")
        if sum((-1) ** q * b for q, b in enumerate(got)) != fx.euler:
            raise FixtureError(f"{fx.name}: Euler-Poincare fails mod {p}")


def _load(name: str) -> SimplicialComplex:
    text = resources.files("cohomops").joinpath("fixtures", f"{name}.cplx").read_text("utf-8")
    return parse_complex(text)


def _H(*groups):
    return tuple((g, ()) if isinstance(g, int) else g for g in groups)


# name, homology over Z, Betti numbers mod 2 and mod 3, Euler characteristic, surface?, tags
_TABLE = [
    ("point", _H(1), {2: (1,), 3: (1,)}, 1, False, {"contractible"}),
    ("delta1", _H(1, 0), {2: (1, 0), 3: (1, 0)}, 1, False, {"contractible"}),
    ("delta2", _H(1, 0, 0), {2: (1, 0, 0), 3: (1, 0, 0)}, 1, False, {"contractible"}),
    ("delta3", _H(1, 0, 0, 0), {2: (1, 0, 0, 0), 3: (1, 0, 0, 0)}, 1, False, {"contractible"}),
    ("delta4", _H(1, 0, 0, 0, 0), {2: (1,) + (0,) * 4, 3: (1,) + (0,) * 4}, 1, False, {"contractible"}),
    ("delta5", _H(1, 0, 0, 0, 0, 0), {2: (1,) + (0,) * 5, 3: (1,) + (0,) * 5}, 1, False,
     {"contractible", "dim5"}),
    ("s1", _H(1, 1), {2: (1, 1), 3: (1, 1)}, 0, False, set()),
    ("s2", _H(1, 0, 1), {2: (1, 0, 1), 3: (1, 0, 1)}, 2, True, set()),
    ("rp2", _H(1, (0, (2,)), 0), {2: (1, 1, 1), 3: (1, 0, 0)}, 1, True, set()),
    ("torus", _H(1, 2, 1), {2: (1, 2, 1), 3: (1, 2, 1)}, 0, True, set()),
    ("klein", _H(1, (1, (2,)), 0), {2: (1, 2, 1), 3: (1, 1, 0)}, 0, True, set()),
    ("cp2", _H(1, 0, 1, 0, 1), {2: (1, 0, 1, 0, 1), 3: (1, 0, 1, 0, 1)}, 3, False, {"sq2", "closed"}),
    ("s2_wedge_s5", _H(1, 0, 1, 0, 0, 1), {2: (1, 0, 1, 0, 0, 1), 3: (1, 0, 1, 0, 0, 1)}, 1, False,
     {"dim5"}),
    ("rp2_wedge_d5", _H(1, (0, (2,)), 0, 0, 0, 0), {2: (1, 1, 1, 0, 0, 0), 3: (1, 0, 0, 0, 0, 0)}, 1,
     False, {"dim5"}),
    ("torus_wedge_s5", _H(1, 2, 1, 0, 0, 1), {2: (1, 2, 1, 0, 0, 1), 3: (1, 2, 1, 0, 0, 1)}, -1, False,
     {"dim5"}),
]

_CACHE: dict[str, Fixture] = {}


def fixtures(validate: bool = True) -> list[Fixture]:
    """All shipped fixtures, validated against their expected invariants."""
    out = []
    for name, hz, betti, chi, surface, tags in _TABLE:
        if name not in _CACHE:
            fx = Fixture(name, _load(name), hz, betti, chi, surface, frozenset(tags))
            if validate:
                validate_fixture(fx)
            _CACHE[name] = fx
        out.append(_CACHE[name])
    return out


def fixture(name: str) -> Fixture:
    for fx in fixtures():
        if fx.name == name:
            return fx
    raise KeyError(name)


# --------------------------------------------------------------------------
# random complexes


def random_complex(seed: int, max_vertices: int = 6, max_dim: int = 3) -> SimplicialComplex:
    """Closure of a seeded random set of simplices on at most ``max_vertices`` vertices."""
    if not 1 <= max_vertices <= 8:
        raise ValueError("max_vertices must be between 1 and 8")
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    top = min(max_dim, n - 1)
    maximal = []
    for _ in range(rng.randint(1, 2 * n)):
        k = rng.randint(1, top + 1)
        maximal.append(tuple(sorted(rng.sample(range(n), k))))
    # keep every vertex so the vertex set is exactly range(n)
    maximal += [(v,) for v in range(n)]
    return closure_from_maximal(maximal)
