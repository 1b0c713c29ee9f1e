import random

import pytest
from hypothesis import given, strategies as st

from twokinds.chain import (ChainComplex, ChainError, ChainMap, ExactTriple, cone, direct_sum,
                            euler_characteristic, find_homotopy, homology,
                            homotopy_class_count, is_acyclic,
                            shift, totalize_exact_triple, validate_complex)
from twokinds.checks import brute_force_class_count, random_chain_map
from twokinds.linalg import QQ, ZZ, F, Mat
from strategies import complexes, fields

K2 = F(2)


def interval(K, lo=0):
    """K -> K, the identity; acyclic."""
    return ChainComplex.from_diffs(K, lo, [1, 1], [Mat.identity(K, 1)])


def test_concentrated_homology():
    C = ChainComplex.concentrated(K2, 3, 1)
    assert homology(C, 1).rank == 3
    assert not is_acyclic(C)


def test_interval_is_acyclic():
    assert is_acyclic(interval(QQ))


def test_integer_torsion_is_reported():
    C = ChainComplex.from_diffs(ZZ, 0, [1, 1], [Mat(ZZ, [[2]])])
    H = homology(C, 1)
    assert H.rank == 0 and H.torsion == (2,)
    assert not is_acyclic(C)


def test_invalid_square_rejected():
    d = Mat.identity(K2, 1)
    C = ChainComplex.from_diffs(K2, 0, [1, 1, 1], [d, d])
    assert not validate_complex(C).ok


def test_homology_outside_window_of_bounded_complex():
    with pytest.raises(ChainError):
        homology(ChainComplex.concentrated(K2, 1, 0), 5)


def test_homology_refuses_non_complex():
    with pytest.raises(TypeError):
        homology("not a complex", 0)


def test_shift_sign_and_degrees():
    C = ChainComplex.from_diffs(QQ, 0, [1, 1], [Mat(QQ, [[3]])])
    S = shift(C, 1)
    assert (S.lo, S.hi) == (-1, 0)
    assert S.d(-1) == Mat(QQ, [[-3]])
    assert shift(S, -1) == C


def test_cone_convention():
    A = ChainComplex.concentrated(K2, 1, 0)
    C, inc, proj = cone(ChainMap.identity(A))
    assert (C.lo, C.hi) == (-1, 0)
    assert is_acyclic(C)
    assert inc.is_chain_map() and proj.is_chain_map()


def test_periodic_complex_folds():
    K = F(2)
    X = Mat(K, [[0, 0], [1, 0]])
    C = ChainComplex(K, 0, 1, (2, 2), (X,), 1, 1)
    assert C.rank(-7) == 2 and C.d(9) == X
    assert is_acyclic(C)
    assert not C.is_bounded
    with pytest.raises(ChainError):
        euler_characteristic(C)


def test_hom_complex_of_point_classes():
    A = ChainComplex.concentrated(K2, 1, 0)
    assert homotopy_class_count(A, A) == 2
    assert homotopy_class_count(A, shift(A, 1)) == 1


def test_find_homotopy_between_maps_out_of_acyclic():
    I = interval(K2)
    f = ChainMap.identity(I)
    h = find_homotopy(f, ChainMap.zero(I, I))
    assert h is not None


def test_exact_triple_totalization():
    A = ChainComplex.concentrated(QQ, 1, 0)
    C, inc, proj = cone(ChainMap.identity(A))
    T = ExactTriple(A, C, shift(A, 1), inc, proj)
    assert is_acyclic(totalize_exact_triple(T))


def test_non_exact_triple_rejected():
    A = ChainComplex.concentrated(QQ, 1, 0)
    z = ChainMap.zero(A, A)
    with pytest.raises(ChainError):
        totalize_exact_triple(ExactTriple(A, A, A, z, z))


def test_direct_sum_ranks():
    A, B = interval(K2), ChainComplex.concentrated(K2, 2, 0)
    S = direct_sum([A, B])
    assert S.rank(0) == 3 and homology(S, 0).rank == 2


@pytest.mark.parametrize("n", [-1, 0, 1])
def test_class_count_matches_enumeration_examples(n):
    A = ChainComplex.from_diffs(K2, 0, [1, 1], [Mat(K2, [[0]])])
    B = shift(ChainComplex.from_diffs(K2, 0, [2, 1], [Mat(K2, [[1, 0]])]), n)
    count, exact = brute_force_class_count(A, B)
    assert exact and count == homotopy_class_count(A, B)


# --- properties ---------------------------------------------------------------------------

@given(complexes())
def test_random_complexes_square_to_zero(C):
    assert validate_complex(C).ok


@given(complexes())
def test_cone_of_identity_acyclic(C):
    assert is_acyclic(cone(ChainMap.identity(C))[0])


@given(complexes(), st.integers(-3, 3))
def test_shift_reindexes_homology(C, n):
    S = shift(C, n)
    for i in range(C.lo, C.hi + 1):
        assert homology(S, i - n).rank == homology(C, i).rank


@given(complexes())
def test_euler_characteristic_of_homology(C):
    hs = sum((1 if i % 2 == 0 else -1) * homology(C, i).rank for i in range(C.lo, C.hi + 1)) if not C.is_empty else 0
    assert hs == euler_characteristic(C)


@given(fields(), st.integers(0, 2 ** 31), st.integers(0, 2 ** 31))
def test_long_exact_sequence_rank_identity(K, s1, s2):
    rng = random.Random(s1 ^ s2)
    from twokinds.checks import random_complex
    A = random_complex(rng, K, 5)
    B = random_complex(rng, K, 5, lo=A.lo)
    f = random_chain_map(rng, A, B)
    C = cone(f)[0]
    assert f.is_chain_map()

    def h(X, i):
        return homology(X, i).rank if not X.is_empty and X.lo <= i <= X.hi else 0

    # alternating rank sum along the long exact sequence B -> C -> A[1]
    lo, hi = min(A.lo, B.lo) - 2, max(A.hi, B.hi) + 2
    sign = [1 if i % 2 == 0 else -1 for i in range(lo, hi + 1)]
    total = sum(s * (h(B, i) - h(C, i) + h(A, i + 1)) for s, i in zip(sign, range(lo, hi + 1)))
    assert total == 0


@given(complexes(K=F(2), max_total=4))
def test_totalized_cone_triple_acyclic(C):
    T, inc, proj = cone(ChainMap.identity(C))
    assert is_acyclic(totalize_exact_triple(ExactTriple(C, T, shift(C, 1), inc, proj)))
