import pytest

from twokinds import fixtures as fx
from twokinds.cdg import (CDGError, CDGRing, CurvedHomologyRefused,
                          as_dg_module, cdg_hom_complex, cdg_to_derived_kinds, curvature_residual,
                          exterior_like, free_cdg_module, matrix_factorization_pair, rank_one_curved,
                          square_of_d, truncated_polynomial, uncurved_rank_one, validate_cdg_module,
                          validate_cdg_ring)
from twokinds.chain import homology, validate_complex
from twokinds.dgcat import LinearHom, validate_dg_category
from twokinds.linalg import F

CDG_FIXTURES = ["cdg-rank-one-f2", "cdg-rank-one-f3", "cdg-mf", "cdg-mf-swap", "cdg-uncurved"]


@pytest.mark.parametrize("name", CDG_FIXTURES)
def test_fixtures_validate(name):
    M = fx.load(name)
    assert validate_cdg_module(M).ok
    for i in range(M.space.lo - 1, M.space.hi + 1):
        assert curvature_residual(M, i).is_zero()


@pytest.mark.parametrize("name", ["cdg-rank-one-f2", "cdg-rank-one-f3", "cdg-mf"])
def test_curved_modules_have_nonzero_square(name):
    M = fx.load(name)
    assert any(not square_of_d(M, i).is_zero() for i in range(M.space.lo, M.space.hi + 1))


@pytest.mark.parametrize("a", ["cdg-mf", "cdg-mf-swap"])
@pytest.mark.parametrize("b", ["cdg-mf", "cdg-mf-swap"])
def test_hom_complexes_square_to_zero(a, b):
    H = cdg_hom_complex(fx.load(a), fx.load(b))
    assert validate_complex(H).ok
    assert homology(H, 0).rank == 1


def test_rank_one_endomorphisms():
    for K in (F(2), F(3)):
        H = cdg_hom_complex(rank_one_curved(K), rank_one_curved(K))
        assert list(H.ranks) == [0, 0, 1, 1, 1]
        assert homology(H, 0).rank == 1


def test_uncurved_agrees_with_dg_path():
    M = uncurved_rank_one(F(2))
    D = as_dg_module(M)
    assert cdg_hom_complex(M, M) == LinearHom(D, D).complex


def test_as_dg_module_refuses_curvature():
    with pytest.raises(CDGError):
        as_dg_module(rank_one_curved(F(2)))


def test_homology_refused():
    M = fx.load("cdg-mf")
    with pytest.raises(CurvedHomologyRefused):
        M.homology(0)
    with pytest.raises(TypeError):
        homology(M, 0)


def test_uncurved_generator_over_curved_ring_rejected():
    C = rank_one_curved(F(2)).cdg
    bad = free_cdg_module(C, [0], [[]], "bad")   # d g = 0, so d² = 0 ≠ h·
    assert not validate_cdg_module(bad).ok


def test_ring_axioms():
    for M in (rank_one_curved(F(3)), matrix_factorization_pair(F(2))[0]):
        assert validate_cdg_ring(M.cdg).ok
    B = truncated_polynomial(F(2), 3)
    assert not validate_cdg_ring(CDGRing(B, (F(2)(0), F(2)(1), F(2)(0)))).ok   # h of degree 1


def test_packaged_category():
    M, N = matrix_factorization_pair(F(2))
    A = cdg_to_derived_kinds([M, N], names=["M", "N"])
    assert validate_dg_category(A) == []


def test_package_rejects_mixed_rings():
    with pytest.raises(CDGError):
        cdg_to_derived_kinds([rank_one_curved(F(2)), matrix_factorization_pair(F(2))[0]])


def test_exterior_ring_degrees():
    assert exterior_like(F(2)).degrees == (0, 1, 1, 2)
