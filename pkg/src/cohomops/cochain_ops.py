"""Cochain-level products and Steenrod-type operations.

All formulas evaluate simplex by simplex on increasing vertex sequences
``v_0 < v_1 < ... < v_n``. Index patterns (which vertices feed which
factor) depend only on the degrees involved and are cached.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .complexes import Cochain, coboundary

__all__ = [
    "cup",
    "cup_i",
    "cup_i_splittings",
    "sq_cochain",
    "p1_cochain",
    "p1_terms",
    "e3_cochain",
    "eta_cochain",
    "psi_cochain",
    "NotBoundingError",
]


class NotBoundingError(ValueError):
    pass


def _require_mod2(*cochains):
    for c in cochains:
        if c.modulus != 2:
            raise ValueError(f"cup-i products are only defined mod 2 here (got modulus {c.modulus})")


def cup(c: Cochain, c2: Cochain) -> Cochain:
    """Alexander-Whitney cup product: front p-face times back q-face."""
    if c.modulus != c2.modulus:
        raise ValueError(f"ring mismatch: {c.modulus} vs {c2.modulus}")
    if c.complex is not c2.complex and c.complex != c2.complex:
        raise ValueError("cochains live on different complexes")
    K, m = c.complex, c.modulus
    p, q = c.degree, c2.degree
    out = {}
    if c.values and c2.values:
        a, b = c.values, c2.values
        for s in K.simplices(p + q):
            x = a.get(s[:p + 1])
            if x:
                y = b.get(s[p:])
                if y:
                    v = x * y
                    if m:
                        v %= m
                    if v:
                        out[s] = v
    return Cochain._trusted(K, p + q, out, m)


@lru_cache(maxsize=None)
def cup_i_splittings(n: int, p: int, q: int, i: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Vertex positions feeding each factor of a cup-i product on an n-simplex.

    The positions 0..n are cut at ``j_0 < j_1 < ... < j_i`` into the closed
    intervals [0, j_0], [j_0, j_1], ..., [j_i, n]. The first factor reads the
    even-numbered intervals, the second the odd-numbered ones; only cuts
    giving p + 1 and q + 1 positions respectively are kept.
    """
    if i < 0 or n < 0:
        return ()
    out = []
    for cuts in combinations(range(n + 1), i + 1):
        bounds = (0,) + cuts + (n,)
        even: list[int] = []
        odd: list[int] = []
        for k in range(i + 2):
            block = range(bounds[k], bounds[k + 1] + 1)
            (even if k % 2 == 0 else odd).extend(block)
        if len(even) == p + 1 and len(odd) == q + 1:
            out.append((tuple(even), tuple(odd)))
    return tuple(out)


def cup_i(c: Cochain, c2: Cochain, i: int) -> Cochain:
    """Steenrod's cup-i product mod 2, of degree deg c + deg c2 - i.

    ``i < 0`` gives the zero cochain; ``cup_i(c, c2, 0)`` is the cup product.
    """
    _require_mod2(c, c2)
    K = c.complex
    p, q = c.degree, c2.degree
    n = p + q - i
    out = {}
    pattern = cup_i_splittings(n, p, q, i)
    if pattern and c.values and c2.values:
        a, b = c.values, c2.values
        for s in K.simplices(n):
            total = 0
            for front, back in pattern:
                if a.get(tuple(s[k] for k in front)) and b.get(tuple(s[k] for k in back)):
                    total ^= 1
            if total:
                out[s] = 1
    return Cochain._trusted(K, n, out, 2)


def sq_cochain(c: Cochain, i: int) -> Cochain:
    """Sq^i at cochain level: ``c cup_{j-i} c`` for a j-cochain c."""
    return cup_i(c, c, c.degree - i)


@lru_cache(maxsize=None)
def p1_terms(p: int, q: int) -> tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]:
    """(sign, factor positions) for every summand of the P_1 formula.

    One summand per pair (j, i) with 1 <= j <= p-1 and jq <= i <= (j+1)q - 1,
    each a product of p values of the q-cochain.
    """
    terms = []
    for j in range(1, p):
        for i in range(j * q, (j + 1) * q):
            sign = -1 if ((i + 1) * (q + 1) + 1) % 2 else 1
            factors = [tuple(range(k * q, (k + 1) * q + 1)) for k in range(j - 1)]
            factors.append(tuple(range((j - 1) * q, i - q + 1)) + tuple(range(i, (j + 1) * q)))
            factors += [tuple(range(k * q - 1, (k + 1) * q)) for k in range(j + 1, p)]
            factors.append(tuple(range(i - q, i + 1)))
            terms.append((sign, tuple(factors)))
    return tuple(terms)


def p1_cochain(c: Cochain, p: int) -> Cochain:
    """Reduced power P_1 of a q-cochain mod an odd prime p, of degree pq - 1."""
    if p == 2:
        raise ValueError("P_1 needs an odd prime; use sq_cochain mod 2")
    if c.modulus != p:
        raise ValueError(f"cochain is over modulus {c.modulus}, expected {p}")
    K, q = c.complex, c.degree
    n = p * q - 1
    out = {}
    if q >= 1 and c.values:
        terms = p1_terms(p, q)
        vals = c.values
        for s in K.simplices(n):
            total = 0
            for sign, factors in terms:
                prod = sign
                for pos in factors:
                    v = vals.get(tuple(s[k] for k in pos))
                    if not v:
                        prod = 0
                        break
                    prod *= v
                total += prod
            total %= p
            if total:
                out[s] = total
    return Cochain._trusted(K, n, out, p)


# positions on a 5-simplex for the five products of four 2-cochain values
_E3_TERMS = (
    ((0, 2, 3), (0, 1, 2), (3, 4, 5), (2, 3, 5)),
    ((0, 4, 5), (2, 3, 4), (0, 1, 2), (0, 1, 2)),
    ((0, 1, 5), (3, 4, 5), (1, 2, 3), (1, 2, 3)),
    ((0, 1, 2), (2, 4, 5), (2, 3, 4), (2, 3, 4)),
    ((0, 1, 2), (2, 3, 5), (3, 4, 5), (3, 4, 5)),
)


def e3_cochain(c: Cochain) -> Cochain:
    """The 5-cochain E_3(c^4) of a mod-2 2-cochain."""
    _require_mod2(c)
    if c.degree != 2:
        raise ValueError(f"E_3 takes a 2-cochain, got degree {c.degree}")
    K = c.complex
    vals = c.values
    out = {}
    if vals:
        for s in K.simplices(5):
            total = 0
            for term in _E3_TERMS:
                if all(vals.get((s[a], s[b], s[d])) for a, b, d in term):
                    total ^= 1
            if total:
                out[s] = 1
    return Cochain._trusted(K, 5, out, 2)


def eta_cochain(c: Cochain) -> Cochain:
    """Pointwise ``c(s) (c(s) + 1) / 2`` mod 2, from integral (or mod-4) values."""
    if c.modulus not in (0, 4):
        raise ValueError("eta needs integral or mod-4 coefficients")
    out = {s: 1 for s, v in c.values.items() if (v * (v + 1) // 2) % 2}
    return Cochain._trusted(c.complex, c.degree, out, 2)


def psi_cochain(c: Cochain, b: Cochain) -> Cochain:
    """Cochain-level Adem secondary operation for an integral 2-cocycle.

    ``b`` is a mod-2 3-cochain with ``delta b == c cup c`` mod 2. Returns
    b cup_1 b + b cup_2 delta b + E_3(c) + eta cup_0 delta eta, where
    eta = eta_cochain(c) (the eta cup_{-1} eta term vanishes).
    """
    if c.degree != 2:
        raise ValueError(f"only degree 2 is supported, got {c.degree}")
    if b.degree != c.degree + 1:
        raise ValueError(f"b must have degree {c.degree + 1}")
    _require_mod2(b)
    c2 = c.reduce(2)
    db = coboundary(b)
    if db != cup_i(c2, c2, c.degree - 2):
        raise NotBoundingError("b is not a bounding cochain for Sq^2 c")
    eta = eta_cochain(c)
    i = c.degree - 2
    return (cup_i(b, b, i + 1)
            + cup_i(b, db, i + 2)
            + e3_cochain(c2)
            + cup_i(eta, eta, i - 1)
            + cup_i(eta, coboundary(eta), i))
