from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twokinds.linalg import (QQ, ZZ, F, Mat, inverse, is_invertible, kernel_basis, kron, rank, rref,
                             smith_diagonal, solve)
from strategies import fields, matrices


def test_field_arithmetic_mod_p():
    K = F(5)
    assert K(7) == 2
    assert K(K.inv(3) * 3) == 1
    assert list(K.elements()) == [0, 1, 2, 3, 4]


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        F(4)


def test_rank_and_kernel_small():
    K = F(2)
    A = Mat(K, [[1, 1, 0], [0, 1, 1]])
    assert rank(A) == 2
    (k,) = kernel_basis(A)
    assert A.apply(k) == (0, 0)


def test_rationals_exact():
    A = Mat(QQ, [[1, 2], [3, 4]])
    Ai = inverse(A)
    assert Ai[0, 0] == Fraction(-2)
    assert A @ Ai == Mat.identity(QQ, 2)


def test_smith_diagonal_over_integers():
    A = Mat(ZZ, [[2, 4], [6, 8]])
    assert sorted(abs(x) for x in smith_diagonal(A) if x) == [2, 4]


def test_kron_index_convention():
    K = F(3)
    a = Mat(K, [[1], [2]])
    b = Mat(K, [[1, 1]])
    k = kron(a, b)
    assert k.shape == (2, 2)
    assert k[1, 0] == 2


@given(matrices())
def test_rank_nullity(A):
    r, c = A.shape
    assert rank(A) + len(kernel_basis(A)) == c
    for v in kernel_basis(A):
        assert not any(A.apply(v))


@given(matrices())
def test_rref_preserves_rank(A):
    R = rref(A)
    R = R[0] if isinstance(R, tuple) else R
    assert rank(R) == rank(A)


@given(matrices(), st.data())
def test_solve_finds_preimages(A, data):
    r, c = A.shape
    K = A.K
    x = tuple(K(data.draw(st.integers(0, 4))) for _ in range(c))
    b = A.apply(x)
    y = solve(A, b)
    assert y is not None and A.apply(y) == b


@given(fields(), st.integers(1, 4), st.data())
def test_invertible_iff_full_rank(K, n, data):
    A = data.draw(matrices(K, max_dim=n).filter(lambda m: m.shape == (n, n)) | st.just(Mat.identity(K, n)))
    assert is_invertible(A) == (rank(A) == n)
