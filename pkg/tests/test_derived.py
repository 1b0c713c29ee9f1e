import pytest

from twokinds import fixtures as fx
from twokinds.chain import ChainComplex
from twokinds.dgcat import GradedRingPresentation, degreewise_module
from twokinds.derived import (CertificateError, TriangleWitness,
                              UnsupportedRing, WitnessRejected, certify_bounded_acyclic,
                              check_certificate, classify_acyclic, coreflect_via_triangle,
                              is_degreewise_injective, is_degreewise_projective,
                              is_homotopy_projective_against, iter_nodes, linear_h0_rank,
                              membership_status, reflect_via_triangle, single_field_mutations,
                              split_reflection_witness, trivial_reflection_witness)
from twokinds.derived import TestSet as ObjectSet
from twokinds.checks import FORBIDDEN, scan_for_nonmembership
from twokinds.linalg import F, Mat

K = F(2)


@pytest.mark.parametrize("L", [1, 2, 3])
@pytest.mark.parametrize("side", ["left", "right"])
def test_generated_certificates_validate(L, side):
    X = fx.windowed_left_tail(L) if side == "left" else fx.windowed_right_tail(L)
    for flavor in ("co", "contra"):
        cert = certify_bounded_acyclic(X, flavor)
        assert check_certificate(cert, X).ok


def test_certificate_for_wrong_target_fails():
    cert = fx.load("cert-co-right-tail")
    chk = check_certificate(cert, fx.load("windowed-left-tail"))
    assert not chk.ok and chk.failures[0][0].startswith("root")


def test_non_acyclic_input_refused():
    with pytest.raises(CertificateError):
        certify_bounded_acyclic(fx.load("free-rank-one"), "co")


def test_mutations_are_located():
    cert = fx.load("cert-contra-left-tail")
    X = fx.load("windowed-left-tail")
    muts = single_field_mutations(cert)
    rejected = [check_certificate(m, X) for _, m in muts]
    bad = [c for c in rejected if not c.ok]
    assert len(bad) >= 10
    assert all(c.failures[0][0].startswith("root") for c in bad)


def test_harmless_mutations_still_give_valid_certificates():
    cert = fx.load("cert-co-right-tail")
    X = fx.load("windowed-right-tail")
    for desc, m in single_field_mutations(cert):
        if check_certificate(m, X).ok:
            assert "h_gf" in desc


def test_node_paths_are_unique():
    cert = fx.load("cert-co-right-tail")
    paths = [p for p, _ in iter_nodes(cert.root)]
    assert len(paths) == len(set(paths)) and paths[0] == "root"


def test_membership_wording_never_denies():
    X = fx.load("windowed-right-tail")
    good = fx.load("cert-co-right-tail")
    wrong = fx.load("cert-contra-left-tail")
    texts = [membership_status(good, X), membership_status(None, X), membership_status(wrong, X)]
    assert texts[0] == "certified coacyclic"
    assert texts[1] == "no certificate provided"
    assert texts[2].endswith("no membership verdict")
    assert not any(scan_for_nonmembership(t) for t in texts)


def test_scanner_catches_denials():
    for p in FORBIDDEN:
        assert scan_for_nonmembership(f"verdict: X {p} something")


def test_ordinary_acyclicity():
    assert classify_acyclic(fx.load("windowed-left-tail"))
    assert not classify_acyclic(fx.load("free-rank-one"))


def test_degreewise_tests():
    assert is_degreewise_projective(fx.load("windowed-two-sided"))
    assert is_degreewise_injective(fx.load("windowed-two-sided"))
    assert not is_degreewise_projective(fx.load("windowed-left-tail"))
    assert not is_degreewise_injective(fx.load("residue-field"))


def test_non_local_ring_refused():
    mult = tuple(tuple(tuple(K(int(a == b == t)) for t in range(2)) for b in range(2)) for a in range(2))
    split = GradedRingPresentation(K, (0, 0), mult, (K(1), K(1)), None, ("e1", "e2"))
    M = degreewise_module(split, ChainComplex.concentrated(K, 2, 0),
                          ({2: Mat(K, [[1, 0], [0, 0]])}, {2: Mat(K, [[0, 0], [0, 1]])}))
    with pytest.raises(UnsupportedRing):
        is_degreewise_projective(M)


def test_hom_vanishing_against_certified_objects():
    X = fx.load("windowed-left-tail")
    for p in ("free-rank-one", "free-rank-one-up", "free-rank-one-down"):
        assert linear_h0_rank(fx.load(p), X) == 0
    T = ObjectSet((("left", X, "contraacyclic", fx.load("cert-contra-left-tail")),))
    assert T.validate() == []
    res = is_homotopy_projective_against(fx.load("free-rank-one"), T)
    assert res["verdict"] and "finite test set" in res["scope"]


def test_test_set_designations_checked():
    X = fx.load("windowed-left-tail")
    T = ObjectSet((("left", X, "coacyclic", None), ("R", fx.load("free-rank-one"), "acyclic", None)))
    assert len(T.validate()) == 2


def test_split_reflection():
    X, E = fx.load("windowed-left-tail"), fx.load("free-rank-one")
    A, wit = split_reflection_witness(X, E)
    tests = [(n, fx.load(n)) for n in ("free-rank-one", "free-rank-one-up", "windowed-two-sided")]
    assert reflect_via_triangle(A, wit, tests)["verdict"]


def test_trivial_witnesses():
    A = fx.load("windowed-two-sided")
    wit = trivial_reflection_witness(A)
    tests = [("R", fx.load("free-rank-one"))]
    assert reflect_via_triangle(A, wit, tests)["verdict"]
    assert coreflect_via_triangle(A, wit, tests)["verdict"]


def test_bad_witness_rejected():
    X, E = fx.load("windowed-left-tail"), fx.load("free-rank-one")
    A, wit = split_reflection_witness(X, E)
    f = tuple((d, m.with_entry(0, 0, K(m[0, 0] + 1))) for d, m in wit.f)
    with pytest.raises(WitnessRejected):
        reflect_via_triangle(A, TriangleWitness(wit.C, wit.c, wit.D, f, wit.g, wit.h_fg, wit.h_gf),
                             [("R", E)])


def test_identity_of_left_tail_is_not_null_homotopic():
    X = fx.load("windowed-left-tail")
    T = ObjectSet((("left", X, "contraacyclic", fx.load("cert-contra-left-tail")),))
    res = is_homotopy_projective_against(X, T)
    assert res["ranks"]["left"] >= 1 and not res["verdict"]
