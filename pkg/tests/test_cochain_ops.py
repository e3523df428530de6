import random

import pytest

from cohomops.cochain_ops import (
    NotBoundingError,
    cup,
    cup_i,
    e3_cochain,
    eta_cochain,
    p1_cochain,
    p1_terms,
    psi_cochain,
    sq_cochain,
)
from cohomops.complexes import Cochain, coboundary
from cohomops.minimal_model import cohomology_basis
from cohomops.oracle import fixture, random_complex
from cohomops.simplicial import closure_from_maximal, parse_complex

from _helpers import random_cochain, random_cocycle

DELTA5 = closure_from_maximal([range(6)])
# the E_3 relation lives in degree 6, so it needs 6-simplices to say anything
DELTA6 = closure_from_maximal([range(7)])


def test_cup_on_an_edge():
    K = parse_complex("0 1")
    v0 = Cochain(K, 0, {(0,): 1})
    v1 = Cochain(K, 0, {(1,): 1})
    e = Cochain(K, 1, {(0, 1): 1})
    assert cup(v0, e)[(0, 1)] == 1
    assert cup(e, v1)[(0, 1)] == 1
    assert cup(v1, e)[(0, 1)] == 0
    assert cup(v0, v1).is_zero()


def test_cup_with_zero_and_ring_mismatch():
    K = parse_complex("0 1 2")
    c = Cochain(K, 1, {(0, 1): 1})
    assert cup(c, Cochain.zero(K, 1)).is_zero()
    with pytest.raises(ValueError):
        cup(c, Cochain.zero(K, 1, 2))


def test_cup_on_torus_is_nontrivial():
    K = fixture("torus").complex
    H1, H2 = cohomology_basis(K, 2, 1), cohomology_basis(K, 2, 2)
    a, b = H1.representatives
    assert H2.coordinates(cup(a, b)) == [1]


def test_cup_zero_is_cup():
    rng = random.Random(0)
    K = closure_from_maximal([range(5)])
    for _ in range(30):
        p0, q0 = rng.randint(0, 3), rng.randint(0, 3)
        if p0 + q0 > 4:
            continue
        c, d = random_cochain(K, p0, 2, rng), random_cochain(K, q0, 2, rng)
        assert cup_i(c, d, 0) == cup(c, d)


def test_top_cup_is_pointwise_square():
    rng = random.Random(1)
    for q in range(4):
        c = random_cochain(DELTA5, q, 2, rng)
        assert cup_i(c, c, q) == c


def test_negative_and_oversized_index():
    c = random_cochain(DELTA5, 2, 2, random.Random(2))
    assert cup_i(c, c, -1).is_zero()
    assert cup_i(c, c, 3).is_zero()
    with pytest.raises(ValueError):
        cup_i(c.lift(), c.lift(), 1)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_coboundary_identity(i):
    rng = random.Random(10 + i)
    K = closure_from_maximal([range(6)])
    for _ in range(25):
        p0 = rng.randint(max(0, i - 2), 4)
        q0 = rng.randint(max(0, i - 2), 4)
        if p0 + q0 - i + 1 > 5 or p0 + q0 - i < 0:
            continue
        c, d = random_cochain(K, p0, 2, rng), random_cochain(K, q0, 2, rng)
        total = (coboundary(cup_i(c, d, i)) + cup_i(coboundary(c), d, i) + cup_i(c, coboundary(d), i))
        total = total + cup_i(c, d, i - 1) + cup_i(d, c, i - 1)
        assert total.is_zero()


def test_sq_degrees_and_vanishing():
    c = random_cochain(DELTA5, 2, 2, random.Random(4))
    assert sq_cochain(c, 2) == cup(c, c)
    assert sq_cochain(c, 1).degree == 3
    assert sq_cochain(c, 3).is_zero()


def test_sq1_on_rp2():
    K = fixture("rp2").complex
    (a,) = cohomology_basis(K, 2, 1).representatives
    assert cohomology_basis(K, 2, 2).coordinates(sq_cochain(a, 1)) == [1]


def test_sq_maps_cocycles_to_cocycles():
    rng = random.Random(5)
    for seed in range(20):
        K = random_complex(seed, 7, 4)
        for q in range(K.dimension + 1):
            c = random_cocycle(K, q, 2, rng)
            for i in range(q + 1):
                assert coboundary(sq_cochain(c, i)).is_zero()


# --- P_1 ----------------------------------------------------------------------

def test_p1_zero():
    K = fixture("s2").complex
    assert p1_cochain(Cochain.zero(K, 1, 3), 3).is_zero()


@pytest.mark.parametrize("p, q", [(3, 1), (3, 2), (5, 1), (3, 3), (7, 2)])
def test_p1_summand_count(p, q):
    terms = p1_terms(p, q)
    assert len(terms) == (p - 1) * q
    assert all(len(factors) == p for _, factors in terms)
    assert all(len(f) == q + 1 for _, factors in terms for f in factors)


def test_p1_sign_rule():
    # q = 1: sign (-1)^(2(i+1)+1) = -1 for every summand
    assert {s for s, _ in p1_terms(3, 1)} == {-1}
    # q = 2: sign (-1)^(3(i+1)+1) alternates with i
    assert [s for s, _ in p1_terms(3, 2)] == [1, -1, 1, -1]


def test_p1_on_boundary_of_tetrahedron():
    rng = random.Random(6)
    K = fixture("s2").complex
    for _ in range(10):
        c = random_cocycle(K, 1, 3, rng)
        assert coboundary(p1_cochain(c, 3)).is_zero()


def test_p1_cocycles_random():
    rng = random.Random(7)
    for seed in range(30):
        K = random_complex(seed, 8, 5)
        for q in (1, 2):
            if 3 * q - 1 > K.dimension:
                continue
            c = random_cocycle(K, q, 3, rng)
            assert coboundary(p1_cochain(c, 3)).is_zero()


def test_p1_rejects_two():
    K = fixture("s2").complex
    with pytest.raises(ValueError):
        p1_cochain(Cochain.zero(K, 1, 2), 2)


# --- E_3, eta, psi ------------------------------------------------------------

def test_e3_zero():
    assert e3_cochain(Cochain.zero(DELTA5, 2, 2)).is_zero()


def test_e3_single_term_example():
    c = Cochain(DELTA5, 2, {(0, 1, 2): 1, (2, 4, 5): 1, (2, 3, 4): 1}, 2)
    assert e3_cochain(c)[(0, 1, 2, 3, 4, 5)] == 1


def test_e3_rejects_other_degrees():
    with pytest.raises(ValueError):
        e3_cochain(Cochain.zero(DELTA5, 1, 2))


def _e3_relation_holds(c):
    x, y = cup_i(c, c, 0), cup_i(c, c, 1)
    return cup_i(x, x, 2) + cup_i(y, y, 0) == coboundary(e3_cochain(c))


def test_e3_relation_on_random_cocycles():
    rng = random.Random(8)
    for _ in range(40):
        assert _e3_relation_holds(random_cocycle(DELTA6, 2, 2, rng))


def test_e3_relation_on_random_complexes():
    rng = random.Random(9)
    checked = 0
    for seed in range(60):
        K = random_complex(seed, 8, 7)
        if K.dimension >= 6:
            checked += 1
            assert _e3_relation_holds(random_cocycle(K, 2, 2, rng))
    assert checked


def test_e3_printed_second_term_breaks_relation(monkeypatch):
    # the variant with c(v3 v4 v5) as second factor of the second term fails
    import cohomops.cochain_ops as ops
    terms = list(ops._E3_TERMS)
    terms[1] = ((0, 4, 5), (3, 4, 5), (0, 1, 2), (0, 1, 2))
    monkeypatch.setattr(ops, "_E3_TERMS", tuple(terms))
    rng = random.Random(8)
    assert not all(_e3_relation_holds(random_cocycle(DELTA6, 2, 2, rng)) for _ in range(40))


@pytest.mark.parametrize("v, expected", [(0, 0), (1, 1), (2, 1), (3, 0), (4, 0), (-1, 0), (5, 1)])
def test_eta_values(v, expected):
    K = parse_complex("0")
    c = Cochain(K, 0, {(0,): v})
    assert eta_cochain(c)[(0,)] == expected


def test_eta_needs_integral_values():
    with pytest.raises(ValueError):
        eta_cochain(Cochain.zero(DELTA5, 2, 2))


def test_psi_zero_and_degree():
    c = Cochain.zero(DELTA5, 2)
    b = Cochain.zero(DELTA5, 3, 2)
    out = psi_cochain(c, b)
    assert out.is_zero() and out.degree == 5


def test_psi_rejects_non_bounding_b():
    K = fixture("s2_wedge_s5").complex
    b = Cochain(K, 3, {K.simplices(3)[0]: 1}, 2)
    with pytest.raises(NotBoundingError, match="not a bounding cochain"):
        psi_cochain(Cochain.zero(K, 2), b)
