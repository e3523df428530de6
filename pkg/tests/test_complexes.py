import random

import pytest

from cohomops.complexes import (
    Chain,
    Cochain,
    Contraction,
    boundary,
    chain_complex,
    check_contraction,
    coboundary,
    compose_contractions,
    dualize_contraction,
    identity_contraction,
)
from cohomops.minimal_model import build_minimal_model
from cohomops.oracle import fixture, random_complex
from cohomops.simplicial import collapse_thin, parse_complex

from _helpers import random_cochain


@pytest.fixture
def triangle():
    return parse_complex("0 1 2")


def test_boundary_of_triangle(triangle):
    a = Chain(triangle, 2, {(0, 1, 2): 1})
    assert boundary(a).values == {(1, 2): 1, (0, 2): -1, (0, 1): 1}


def test_boundary_of_vertex_is_zero(triangle):
    assert boundary(Chain(triangle, 0, {(1,): 1})).is_zero()


def test_boundary_twice(triangle):
    K = parse_complex("0 1 2 3")
    assert boundary(boundary(Chain(K, 3, {(0, 1, 2, 3): 1}))).is_zero()


def test_chain_rejects_foreign_simplex(triangle):
    with pytest.raises(ValueError):
        Chain(triangle, 1, {(0, 3): 1})
    with pytest.raises(ValueError):
        Chain(triangle, 1, {(0, 1, 2): 1})


def test_coboundary_of_vertex_dual(triangle):
    c = Cochain(triangle, 0, {(1,): 1})
    dc = coboundary(c)
    assert dc[(0, 1)] == 1
    assert dc[(1, 2)] == -1


def test_constant_zero_cochain_is_cocycle(triangle):
    c = Cochain(triangle, 0, {(v,): 1 for v in range(3)})
    assert coboundary(c).is_zero()


@pytest.mark.parametrize("p", [0, 2, 5])
def test_pairing_and_delta_squared(p):
    rng = random.Random(p)
    for seed in range(15):
        K = random_complex(seed, 6, 3)
        for q in range(K.dimension):
            c = random_cochain(K, q, p, rng, lo=-4 if not p else 0, hi=4 if not p else None)
            assert coboundary(coboundary(c)).is_zero()
            a = Chain.from_vector(K, q + 1, [rng.randint(-3, 3) for _ in K.simplices(q + 1)], p)
            assert coboundary(c)(a) == c(boundary(a))


def test_cochain_arithmetic(triangle):
    c = Cochain(triangle, 1, {(0, 1): 1, (1, 2): 1}, 2)
    d = Cochain(triangle, 1, {(0, 1): 1}, 2)
    assert (c + d).values == {(1, 2): 1}
    assert (c - c).is_zero()
    with pytest.raises(ValueError):
        c + Cochain(triangle, 1, {}, 3)
    with pytest.raises(ValueError):
        c + Cochain(triangle, 0, {}, 2)
    assert c.reduce(2) == c and c.lift().modulus == 0


def test_identity_contraction_checks(triangle):
    r = identity_contraction(chain_complex(triangle))
    assert check_contraction(r) == []
    assert check_contraction(dualize_contraction(r)) == []


def test_zero_homotopy_breaks_homotopy_identity(triangle):
    _, r = build_minimal_model(triangle)
    broken = Contraction(r.big, r.small, r.f, r.g, {})
    assert any("1 - gf" in msg for msg in check_contraction(broken))


@pytest.mark.parametrize("name", ["rp2", "torus", "klein", "s2"])
@pytest.mark.parametrize("p", [0, 2, 3])
def test_dual_contraction(name, p):
    _, r = build_minimal_model(fixture(name).complex, p)
    rs = dualize_contraction(r)
    assert check_contraction(rs) == []
    back = dualize_contraction(rs)
    for q in r.degrees():
        assert back.F(q) == r.F(q)
        assert back.G(q) == r.G(q)
        assert back.Phi(q) == r.Phi(q)


def test_composite_contraction():
    K = fixture("rp2_wedge_d5").complex
    thin, r1 = collapse_thin(K)
    _, r2 = build_minimal_model(thin)
    r = compose_contractions(r1, r2)
    assert check_contraction(r) == []
