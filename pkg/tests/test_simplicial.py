import pytest

from cohomops.complexes import check_contraction
from cohomops.minimal_model import GroupPresentation, homology_presentations, minimal_model
from cohomops.oracle import fixtures, random_complex
from cohomops.simplicial import (
    ComplexParseError,
    boundary_matrix,
    closure_from_maximal,
    collapse_thin,
    format_complex,
    parse_complex,
)


def test_parse_triangle():
    K = parse_complex("0 1 2")
    assert K.f_vector == (3, 3, 1)


def test_parse_hollow_triangle():
    K = parse_complex("0 1\n1 2\n0 2\n")
    assert K.f_vector == (3, 3)


def test_parse_comments_and_blanks():
    K = parse_complex("# a comment\n\n0 1\n# another\n1 2\n")
    assert K.f_vector == (3, 2)


@pytest.mark.parametrize("text, line", [
    ("0 1 2\n2 1", 2),
    ("0 1\n1 x", 2),
    ("0  1", 1),
    ("-1 2", 1),
    ("0 1 1", 1),
    ("", 0),
    ("# only a comment\n", 0),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ComplexParseError) as err:
        parse_complex(text)
    assert err.value.line == line


def test_closure_counts():
    assert len(closure_from_maximal([(0, 1, 2, 3)])) == 15
    assert closure_from_maximal([(0,)]).f_vector == (1,)
    assert closure_from_maximal([(0, 1), (1, 2)]).f_vector == (3, 2)


def test_closure_is_idempotent():
    for seed in range(20):
        K = random_complex(seed, 7, 4)
        assert closure_from_maximal(K) == K
        assert closure_from_maximal(K.maximal_simplices()) == K


def test_format_round_trip():
    for seed in range(10):
        K = random_complex(seed, 8, 3)
        assert parse_complex(format_complex(K)) == K


def test_lexicographic_order():
    K = closure_from_maximal([(1, 2, 3), (0, 4)])
    for q in range(K.dimension + 1):
        assert list(K.simplices(q)) == sorted(K.simplices(q))


def test_triangle_boundary_column():
    K = parse_complex("0 1 2")
    assert boundary_matrix(K, 2).to_dense() == [[1], [-1], [1]]


def test_edge_boundary_columns():
    K = random_complex(4, 6, 2)
    for col in boundary_matrix(K, 1).columns():
        assert sorted(col.values()) == [-1, 1]


def test_boundary_out_of_range():
    K = parse_complex("0 1")
    with pytest.raises(ValueError):
        boundary_matrix(K, 2)
    with pytest.raises(ValueError):
        boundary_matrix(K, 0)


@pytest.mark.parametrize("p", [0, 2, 3])
def test_boundary_squares_to_zero(p):
    for seed in range(30):
        K = random_complex(seed, 7, 4)
        for q in range(2, K.dimension + 1):
            assert (boundary_matrix(K, q - 1, p) @ boundary_matrix(K, q, p)).is_zero()


def test_collapse_full_triangle_to_point():
    thin, r = collapse_thin(parse_complex("0 1 2"))
    assert thin.f_vector == (1,)
    assert check_contraction(r) == []


def test_collapse_leaves_hollow_triangle():
    K = parse_complex("0 1\n1 2\n0 2")
    thin, r = collapse_thin(K)
    assert thin == K
    assert check_contraction(r) == []


@pytest.mark.parametrize("p", [0, 2])
def test_collapse_preserves_homology(p):
    complexes = [fx.complex for fx in fixtures()] + [random_complex(s, 6, 3) for s in range(25)]
    for K in complexes:
        thin, r = collapse_thin(K, p)
        assert check_contraction(r) == []
        before = homology_presentations(minimal_model(K, p)[0])
        after = homology_presentations(minimal_model(thin, p)[0])
        padded = after + [GroupPresentation(0, (), p)] * (len(before) - len(after))
        assert before == padded


def test_empty_complex():
    K = closure_from_maximal([])
    assert K.dimension == -1 and len(K) == 0
    thin, r = collapse_thin(K)
    assert len(thin) == 0
