from math import comb

import pytest
from hypothesis import given, strategies as st

from twokinds.chain import ChainComplex, homology
from twokinds.dold_kan import (DoldKanError, component_count, gamma, linear_horn_check, normalize,
                               surjection_count, truncate_nonneg, truncation_inclusion,
                               underlying_simplicial_set, validate_sag)
from twokinds.linalg import QQ, F, Mat
from twokinds.simplicial import check_horns
from strategies import complexes

K2, K3 = F(2), F(3)


def nonneg(K, max_total=8, cap=3):
    return st.integers(1, cap + 1).flatmap(
        lambda L: complexes(K=K, max_total=max_total, lo=-(L - 1), length=L))


@given(nonneg(K3))
def test_round_trip_over_f3(C):
    assert normalize(gamma(C, 3)).same_as(C)


@given(nonneg(QQ, 5))
def test_round_trip_over_rationals(C):
    assert normalize(gamma(C, 3)).same_as(C)


@given(nonneg(K3))
def test_gamma_ranks_and_identities(C):
    G = gamma(C, 3)
    assert not validate_sag(G)
    for n in range(4):
        assert G.ranks[n] == sum(comb(n, k) * C.rank(-k) for k in range(n + 1))
    assert linear_horn_check(G, 3) is None


@pytest.mark.parametrize("n,k", [(0, 0), (3, 1), (3, 3), (4, 2)])
def test_surjection_count(n, k):
    assert surjection_count(n, k) == comb(n, k)


def test_components_count_zeroth_homology():
    C = ChainComplex.from_diffs(K2, -1, [2, 1], [Mat(K2, [[1, 0]])])
    S = underlying_simplicial_set(gamma(C, 2), 2)
    assert component_count(S) == 2 ** homology(C, 0).rank


@pytest.mark.parametrize("C", [ChainComplex.concentrated(K2, 1, 0), ChainComplex.concentrated(K2, 1, -1),
                               ChainComplex.from_diffs(K2, -1, [1, 1], [Mat.identity(K2, 1)])])
def test_underlying_set_is_kan(C):
    assert check_horns(underlying_simplicial_set(gamma(C, 3), 3), 3, inner_only=False) is None


def test_positive_degrees_rejected():
    with pytest.raises(DoldKanError):
        gamma(ChainComplex.concentrated(K2, 1, 1))


def test_truncation_keeps_cycles():
    C = ChainComplex.from_diffs(K2, -1, [1, 2, 1], [Mat(K2, [[1], [1]]), Mat(K2, [[1, 1]])])
    T = truncate_nonneg(C)
    assert (T.lo, T.hi) == (-1, 0) and T.rank(0) == 1
    assert truncation_inclusion(C).is_chain_map()


def test_enumeration_budget():
    C = ChainComplex.concentrated(K3, 4, 0)
    with pytest.raises(DoldKanError):
        underlying_simplicial_set(gamma(C, 3), 3, budget=100)
