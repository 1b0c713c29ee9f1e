import pytest
from hypothesis import given, strategies as st

from twokinds import fixtures as fx
from twokinds.comod import (Coalgebra, ComodError, a2_coalgebra, check_correspondence, cofree_comodule,
                            coalgebra_as_right_comodule, contratensor, dual_numbers_coalgebra,
                            free_contramodule, kronecker_coalgebra, path_coalgebra, phi, psi,
                            trivial_coalgebra, validate_coalgebra, validate_comodule,
                            validate_contramodule, zero_contramodule)
from twokinds.linalg import F, Mat

COALGEBRAS = ["coalg-trivial", "coalg-dual-numbers", "coalg-a2", "coalg-kronecker"]


@pytest.mark.parametrize("name", COALGEBRAS)
def test_fixture_coalgebras_validate(name):
    assert validate_coalgebra(fx.load(name)).ok


@pytest.mark.parametrize("name", COALGEBRAS)
@pytest.mark.parametrize("v", [1, 2])
def test_free_objects_validate(name, v):
    C = fx.load(name)
    assert validate_comodule(cofree_comodule(C, v)).ok
    assert validate_contramodule(free_contramodule(C, v)).ok


@pytest.mark.parametrize("name", COALGEBRAS)
@pytest.mark.parametrize("v", [1, 2, 3])
def test_psi_and_phi_dimensions(name, v):
    C = fx.load(name)
    # Hom_C(C, C⊗V) ≅ Hom(C, V) and C ⊙ Hom(C, V) ≅ C⊗V, both of dimension dim C · v
    assert psi(cofree_comodule(C, v)).contramodule.dim == C.dim * v
    assert phi(free_contramodule(C, v)).comodule.dim == C.dim * v


@pytest.mark.parametrize("name", COALGEBRAS)
def test_psi_and_phi_outputs_validate(name):
    C = fx.load(name)
    assert validate_contramodule(psi(cofree_comodule(C, 2)).contramodule).ok
    assert validate_comodule(phi(free_contramodule(C, 2)).comodule).ok


@pytest.mark.parametrize("name", COALGEBRAS)
@pytest.mark.parametrize("v", [1, 2, 3])
def test_correspondence_witnesses(name, v):
    rep = check_correspondence(fx.load(name), v)
    assert rep.ok
    assert rep.comodule_dims[0] == rep.comodule_dims[1]


def test_trivial_coalgebra_gives_identities():
    C = trivial_coalgebra(F(5))
    rep = check_correspondence(C, 2)
    assert rep.comodule_witness == Mat.identity(C.K, 2)
    assert rep.contramodule_witness == Mat.identity(C.K, 2)


def test_contratensor_with_zero_is_zero():
    C = dual_numbers_coalgebra(F(2))
    assert contratensor(coalgebra_as_right_comodule(C), zero_contramodule(C)).dim == 0


def test_broken_counit_detected():
    C = kronecker_coalgebra(F(3))
    bad = Coalgebra(C.K, C.dim, C.delta, Mat.zeros(C.K, 1, C.dim), name="bad")
    assert not validate_coalgebra(bad).ok


def test_path_coalgebra_dimension():
    C = path_coalgebra(F(2), ["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert validate_coalgebra(C).ok
    assert C.dim >= 5


def test_mismatched_coalgebras_rejected():
    with pytest.raises(ComodError):
        contratensor(coalgebra_as_right_comodule(a2_coalgebra(F(3))), free_contramodule(kronecker_coalgebra(F(3)), 1))


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3))
def test_correspondence_over_several_primes(p, v):
    assert check_correspondence(dual_numbers_coalgebra(F(p)), v).ok
