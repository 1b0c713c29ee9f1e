import pytest

from twokinds import fixtures as fx
from twokinds.chain import ChainComplex
from twokinds.dgcat import (DGError, canonical_cone_witness, canonical_shift_witness, check_cone_witness,
                            check_shift_witness, closed_morphisms, dual_numbers, ground_field, h0_category,
                            h0_rank, module_cone, module_dg_category, module_over, module_shift,
                            semiorthogonal_vanishing, unit_dg_category, validate_dg_category)
from twokinds.linalg import F, Mat

K = F(2)
k = ground_field(K)


def two_term():
    return module_over(k, ChainComplex.from_diffs(K, 0, [1, 1], [Mat(K, [[0]])]))


def point():
    return module_over(k, ChainComplex.concentrated(K, 1, 0))


def test_fixture_categories_validate():
    for name in ("dg-three-object", "dg-dual-numbers-modules"):
        assert validate_dg_category(fx.load(name)) == []
    assert validate_dg_category(unit_dg_category(F(3))) == []


def test_ring_presentations_validate():
    assert dual_numbers(F(3)).validate() == []


def test_three_object_h0_ranks():
    A = fx.load("dg-three-object")
    assert h0_rank(A, "A", "A") == 1
    assert h0_rank(A, "C", "C") == 0        # cone of an identity is contractible
    assert h0_rank(A, "A", "E") == 0
    assert len(h0_category(A).morphisms) == 11


def test_closed_morphisms_contain_identity():
    A = fx.load("dg-three-object")
    assert tuple(A.identity["A"]) in {tuple(v) for v in closed_morphisms(A, "A", "A")}


def test_shift_witness_accepts_correct_and_rejects_wrong_shift():
    A = module_dg_category(k, [two_term(), module_shift(two_term(), 1)], names=["X", "C"])
    assert check_shift_witness(A, "X", "C", 1, canonical_shift_witness(A, "X", "C", 1))
    assert not check_shift_witness(A, "X", "C", -1, canonical_shift_witness(A, "X", "C", -1))


def test_cone_witness():
    f = {0: Mat(K, [[1]])}
    A = module_dg_category(k, [point(), two_term(), module_cone(point(), two_term(), f)],
                           names=["X", "Y", "C"])
    fc = A.map_coords("X", "Y", 0, f)
    assert check_cone_witness(A, fc, "X", "Y", "C", canonical_cone_witness(A, fc, "X", "Y", "C"))
    assert semiorthogonal_vanishing(A, ["C"], ["X"])["verdict"]


def test_duplicate_object_names_rejected():
    with pytest.raises(DGError):
        module_dg_category(k, [point(), point()], names=["X", "X"])


def test_broken_associativity_reported():
    A = fx.load("dg-three-object")
    key = next(iter(A.comp))
    broken = type(A).__new__(type(A))
    broken.__dict__.update(A.__dict__)
    broken.comp = dict(A.comp)
    broken.comp[key] = A.comp[key].with_entry(0, 0, K(A.comp[key][0, 0] + 1))
    assert validate_dg_category(broken)
