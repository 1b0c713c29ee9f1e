import json
import shutil

import pytest
from hypothesis import given

from twokinds import fixtures as fx
from twokinds import serialize as ser
from twokinds.chain import ChainComplex
from twokinds.comod import cofree_comodule, free_contramodule, kronecker_coalgebra
from twokinds.dgnerve import enumerate_simplices
from twokinds.dold_kan import gamma
from twokinds.linalg import QQ, F, Mat
from twokinds.simplicial import cube_nerve
from strategies import complexes

ENCODERS = {
    "chain/1": ser.chain_to_json,
    "dgmod/1": ser.module_to_json,
    "dgcat/1": ser.dgcat_to_json,
    "coalg/1": ser.coalgebra_to_json,
    "cdg/1": ser.cdg_to_json,
    "cert/1": ser.certificate_to_json,
}


@pytest.mark.parametrize("name", fx.names())
def test_shipped_documents_round_trip(name):
    doc = fx.load_document(name)
    again = ENCODERS[doc["schema"]](ser.load(doc))
    if "target" in doc:
        again["target"] = doc["target"]
    assert ser.canonical(again) == ser.canonical(doc)


def test_shipped_documents_match_builders():
    built = fx.build_documents()
    manifest = json.loads((fx.data_root() / "fixtures" / "MANIFEST.json").read_text())
    assert {k: ser.digest(v) for k, v in built.items()} == manifest


def test_listing_is_sorted_and_complete():
    names = [f["name"] for f in fx.list_fixtures()]
    assert names == sorted(names) == fx.names()


def test_verify_clean_tree():
    assert fx.verify() == []


@given(complexes())
def test_chain_round_trip(C):
    assert ser.load(ser.chain_to_json(C)) == C


def test_periodic_chain_round_trip():
    C = fx.periodic_left_tail()
    assert ser.load(ser.chain_to_json(C)) == C


def test_rational_entries_round_trip():
    C = ChainComplex.from_diffs(QQ, 0, [1, 1], [Mat(QQ, [["-3/7"]])])
    assert ser.load(json.loads(json.dumps(ser.chain_to_json(C)))) == C


def test_other_schemas_round_trip():
    S = cube_nerve(2)
    assert ser.load(ser.sset_to_json(S)).f_vector() == S.f_vector()
    G = gamma(ChainComplex.from_diffs(F(3), -1, [1, 2], [Mat(F(3), [[1, 2]])]), 2)
    G2 = ser.load(ser.sag_to_json(G))
    assert (G2.ranks, G2.faces, G2.degeneracies) == (G.ranks, G.faces, G.degeneracies)
    C = kronecker_coalgebra(F(3))
    N = cofree_comodule(C, 2)
    assert ser.load(ser.comodule_to_json(N)) == N
    P = free_contramodule(C, 1)
    assert ser.load(ser.contramodule_to_json(P)) == P
    A = fx.load("dg-three-object")
    simp = enumerate_simplices(A, 2)[:5]
    assert ser.load(ser.simplices_to_json(A.K, simp)) == simp


@pytest.mark.parametrize("doc", [{}, {"schema": "nope/1"}, {"schema": "chain/1"}, [1, 2]])
def test_bad_documents_raise_schema_error(doc):
    with pytest.raises(ser.SchemaError):
        ser.load(doc)


@pytest.fixture
def tree(tmp_path, monkeypatch):
    shutil.copytree(fx.data_root(), tmp_path / "data")
    monkeypatch.setenv(fx.ENV_ROOT, str(tmp_path / "data"))
    return tmp_path / "data" / "fixtures"


def _flip_entry(path):
    doc = json.loads(path.read_text())
    text = json.dumps(doc)
    i = text.index('"1"') if '"1"' in text else text.index("1")
    j = i + 1 if text[i] == '"' else i
    text = text[:j] + ("0" if text[j] == "1" else "1") + text[j + 1:]
    path.write_text(text)


def test_bit_flip_is_located(tree):
    _flip_entry(tree / "windowed-left-tail.json")
    bad = fx.verify()
    assert bad and all(name.startswith(("windowed-left-tail", "cert-contra-left-tail")) for name, _ in bad)


def test_certificate_corruption_names_a_node(tree):
    path = tree / "cert-co-right-tail.json"
    doc = json.loads(path.read_text())
    entry = doc["root"]["f"][0][1][2]
    entry[0][0] = 1 - entry[0][0]
    path.write_text(json.dumps(doc))
    bad = fx.verify()
    names = [n for n, _ in bad]
    assert any(n.startswith("cert-co-right-tail:root") for n in names)


def test_missing_and_unlisted_files(tree):
    (tree / "coalg-a2.json").unlink()
    shutil.copy(tree / "coalg-trivial.json", tree / "coalg-extra.json")
    bad = dict(fx.verify())
    assert "coalg-a2" in bad and "coalg-extra" in bad


def test_invalid_json_reported(tree):
    (tree / "coalg-a2.json").write_text("{not json")
    assert any(n == "coalg-a2" for n, _ in fx.verify())
