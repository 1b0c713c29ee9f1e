import pytest

from twokinds import fixtures as fx
from twokinds.dgcat import unit_dg_category
from twokinds.dgnerve import (EnumerationBudgetExceeded, NerveError, brute_force_count, degeneracy,
                              enumerate_simplices, face, fill_inner_horn_dg, h0_of_nerve,
                              horn_from_simplex, nerve_truncation, validate_simplex)
from twokinds.dgcat import h0_category
from twokinds.fincat import find_category_isomorphism, materialize
from twokinds.linalg import F
from twokinds.simplicial import is_quasicategory


@pytest.fixture(scope="module")
def A():
    return fx.load("dg-three-object")


@pytest.mark.parametrize("n,count", [(0, 3), (1, 13), (2, 83)])
def test_counts_match_brute_force(A, n, count):
    assert len(enumerate_simplices(A, n)) == count == brute_force_count(A, n)


def test_unit_category_nerve_is_a_point_in_each_dimension():
    U = unit_dg_category(F(2))
    # hom = k in degree 0 only, so an n-simplex is a chain of n scalars
    assert [len(enumerate_simplices(U, n)) for n in range(3)] == [1, 2, 4]


def test_faces_and_degeneracies_preserve_validity(A):
    for s in enumerate_simplices(A, 2)[:30]:
        for k in range(3):
            assert validate_simplex(A, face(A, s, k)) == []
            assert validate_simplex(A, degeneracy(A, s, k)) == []
        for k in range(3):
            assert face(A, degeneracy(A, s, k), k) == s


def test_horn_of_a_simplex_refills(A):
    for s in enumerate_simplices(A, 2)[:20]:
        t = fill_inner_horn_dg(A, 2, 1, horn_from_simplex(A, s, 1))
        assert validate_simplex(A, t) == []
        assert all(face(A, t, j) == face(A, s, j) for j in (0, 2))


def test_outer_horn_filling_is_not_offered(A):
    s = enumerate_simplices(A, 2)[0]
    with pytest.raises(NerveError):
        fill_inner_horn_dg(A, 2, 0, horn_from_simplex(A, s, 0))


def test_dimension_cap(A):
    with pytest.raises(NerveError):
        enumerate_simplices(A, 4)


def test_budget(A):
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_simplices(A, 2, budget=5)


def test_homotopy_category_matches_h0(A):
    P, S = h0_of_nerve(A)
    assert find_category_isomorphism(materialize(P, 2), h0_category(A)) is not None


def test_truncated_nerve_is_a_quasicategory(A):
    assert is_quasicategory(nerve_truncation(A, 2), 2)
