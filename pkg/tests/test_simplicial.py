from math import comb

import pytest

from twokinds.fincat import FiniteCategoryPresentation, find_category_isomorphism, materialize, poset_category
from twokinds.simplicial import (boolean_poset, boundary, coherent_hom, coherent_horn_hom, cube_nerve,
                                 enumerate_maps, find_isomorphism, fubini, homotopy_category, horn,
                                 is_kan, is_quasicategory, nerve_of_category, poset_nerve, standard_simplex,
                                 surjections)


def test_standard_simplex_counts():
    assert tuple(standard_simplex(3).f_vector()) == (4, 6, 4, 1)


def test_horn_and_boundary_counts():
    assert tuple(horn(2, 1).f_vector()) == (3, 2)
    assert tuple(boundary(2).f_vector()) == (3, 3)
    assert tuple(horn(3, 1).f_vector()) == (4, 6, 3)


def test_simplices_are_quasicategories():
    assert is_quasicategory(standard_simplex(2), 3)
    assert is_quasicategory(standard_simplex(3), 3)


def test_horn_itself_is_not_a_quasicategory():
    v = is_quasicategory(horn(2, 1), 2)
    assert not v and v.witness[:2] == (2, 1)


def test_interval_is_not_kan():
    assert not is_kan(standard_simplex(1), 2)


def test_map_count_into_simplex():
    # maps Δ^1 -> Δ^2 are monotone pairs
    assert len(enumerate_maps(standard_simplex(1), standard_simplex(2))) == 6


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (2, 2), (3, 0)])
def test_surjections_counted_by_binomials(n, k):
    assert len(surjections(n, k)) == comb(n, k)


def test_poset_nerve_is_quasicategory():
    subsets, leq = boolean_poset([1, 2])
    assert is_quasicategory(poset_nerve(subsets, leq), 3)


def test_nerve_of_category_round_trip():
    C = poset_category([0, 1, 2], lambda a, b: a <= b)
    N = nerve_of_category(C, cap=2)
    assert is_quasicategory(N, 2)
    h = materialize(homotopy_category(N), 3)
    assert find_category_isomorphism(h, C) is not None


def test_fubini_numbers():
    assert [fubini(n) for n in range(6)] == [1, 1, 3, 13, 75, 541]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_coherent_hom_is_a_cube(n):
    S, T = coherent_hom(n, 0, n), cube_nerve(n - 1)
    assert S.f_vector() == T.f_vector()
    assert find_isomorphism(S, T) is not None


@pytest.mark.parametrize("n", [2, 3, 4])
def test_horn_hom_loses_top_cells_and_one_facet(n):
    S = coherent_hom(n, 0, n)
    full = tuple(range(n + 1))
    for i in range(1, n):
        H = coherent_horn_hom(n, i)
        removed = set(S.labels()) - set(H.labels())
        without = tuple(v for v in full if v != i)
        assert removed == {c for c in S.labels() if c[0] == (0, n) and c[-1] in (full, without)}
        assert len(removed) == fubini(n - 1) + fubini(n - 2)


def test_empty_hom_when_source_after_target():
    assert coherent_hom(3, 2, 1).f_vector() in ((), [], (0,), [0])


def test_presentation_word_bound():
    P = FiniteCategoryPresentation(("x",), (("f", "x", "x"),), ())
    from twokinds.fincat import WordBoundExceeded
    with pytest.raises(WordBoundExceeded):
        materialize(P, 2)
