import pytest

from cohomops.minimal_model import homology_presentations, minimal_model
from cohomops.oracle import (
    Fixture,
    FixtureError,
    betti_numbers,
    betti_oracle,
    closed_surface_problems,
    fixture,
    fixtures,
    random_complex,
    validate_fixture,
)
from cohomops.simplicial import boundary_matrix, closure_from_maximal, parse_complex


def test_betti_of_sphere_and_point():
    assert betti_numbers(fixture("s2").complex, 2) == (1, 0, 1)
    assert betti_numbers(parse_complex("0"), 5) == (1,)
    assert betti_oracle(parse_complex("0"), 2, 3) == 0


def test_betti_of_rp2():
    K = fixture("rp2").complex
    assert betti_numbers(K, 2) == (1, 1, 1)
    assert betti_numbers(K, 3) == (1, 0, 0)


def test_betti_of_torus():
    assert betti_numbers(fixture("torus").complex, 2) == (1, 2, 1)


def test_fixture_list():
    names = {fx.name for fx in fixtures()}
    assert {"point", "delta5", "s1", "s2", "rp2", "torus", "klein"} <= names


def test_rp2_fixture_shape():
    K = fixture("rp2").complex
    assert K.f_vector == (6, 15, 10)
    assert closed_surface_problems(K) == []


def test_klein_integral_homology():
    pres = homology_presentations(minimal_model(fixture("klein").complex)[0])
    assert (pres[1].free_rank, pres[1].torsion) == (1, (2,))


def test_validation_catches_bad_expectations():
    K = fixture("torus").complex
    with pytest.raises(FixtureError, match="Euler"):
        validate_fixture(Fixture("bad", K, (), {}, 2))
    with pytest.raises(FixtureError, match="Betti"):
        validate_fixture(Fixture("bad", K, (), {2: (1, 1, 1)}, 0))
    open_disk = closure_from_maximal([(0, 1, 2)])
    with pytest.raises(FixtureError, match="triangles"):
        validate_fixture(Fixture("disk", open_disk, (), {}, 1, surface=True))


def test_random_complex_is_deterministic():
    assert random_complex(42, 8, 4) == random_complex(42, 8, 4)
    assert any(random_complex(s, 8, 4) != random_complex(42, 8, 4) for s in range(5))


def test_random_complex_limits():
    with pytest.raises(ValueError):
        random_complex(0, 9)
    for seed in range(50):
        K = random_complex(seed, 5, 2)
        assert len(K.vertices) <= 5 and K.dimension <= 2
        assert closure_from_maximal(K.maximal_simplices()) == K


def test_random_boundary_squares():
    for seed in range(100):
        K = random_complex(seed, 8, 4)
        for q in range(2, K.dimension + 1):
            assert (boundary_matrix(K, q - 1) @ boundary_matrix(K, q)).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_euler_poincare(p):
    for seed in range(30):
        K = random_complex(seed, 7, 4)
        b = betti_numbers(K, p)
        assert sum((-1) ** q * x for q, x in enumerate(b)) == K.euler_characteristic()
