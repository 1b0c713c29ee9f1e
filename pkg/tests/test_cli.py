import json
import shutil
import subprocess
import sys

import pytest

from twokinds import fixtures as fx
from twokinds.cli import main, shipped_scenarios


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_empty_scenario(capsys):
    code, out, _ = run(capsys, "--format", "json", "run", "--scenario", "empty")
    rep = json.loads(out)
    assert code == 0 and rep["results"] == [] and rep["schema"] == "report/1"


def test_three_truncations(capsys):
    code, out, _ = run(capsys, "--format", "json", "run", "--scenario", "three-truncations")
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    refs = {"periodic-two-sided", "periodic-left-tail", "periodic-right-tail", "cert-co-right-tail",
            "cert-contra-left-tail", "windowed-two-sided"}
    assert refs <= set(rep["inputs"])
    assert all(len(d) == 64 for d in rep["inputs"].values())


def test_failing_expectation_is_located(capsys):
    code, out, _ = run(capsys, "run", "--scenario", "failing-expectation")
    assert code == 1
    assert "operations[0].output.acyclic" in out


def test_budget_exit_code(capsys):
    code, out, _ = run(capsys, "--budget", "10", "run", "--scenario", "dg-nerve")
    assert code == 3 and "budget exceeded" in out


@pytest.mark.parametrize("doc", [
    {"schema": "scenario/2", "operations": []},
    {"schema": "scenario/1"},
    {"schema": "scenario/1", "operations": [{"op": "teleport"}]},
    {"schema": "scenario/1", "operations": [{"op": "classify", "inputs": {"complex": "no-such"}}]},
    {"schema": "scenario/1", "operations": [{"op": "classify", "inputs": {}}]},
])
def test_schema_errors(capsys, tmp_path, doc):
    code, _, err = run(capsys, "run", "--scenario", write(tmp_path, doc))
    assert code == 2 and "schema error" in err


def test_unknown_scenario_name(capsys):
    assert run(capsys, "run", "--scenario", "nothing-here")[0] == 2


def test_reports_are_byte_identical(capsys):
    first = run(capsys, "--format", "json", "run", "--scenario", "three-truncations")[1]
    fx._cache.clear()
    second = run(capsys, "--format", "json", "run", "--scenario", "three-truncations")[1]
    assert first == second


def test_expectation_operators(capsys, tmp_path):
    doc = {"schema": "scenario/1", "name": "ops", "operations": [
        {"op": "mutations", "inputs": {"certificate": "cert-co-right-tail"},
         "expect": {"rejected": {"$ge": 10}, "harmless": {"$len": 3}}}]}
    assert run(capsys, "run", "--scenario", write(tmp_path, doc))[0] == 0


def test_fixture_commands(capsys):
    code, out, _ = run(capsys, "--format", "json", "fixtures", "list")
    names = [d["name"] for d in json.loads(out)]
    assert code == 0 and names == sorted(names)
    assert run(capsys, "fixtures", "verify")[0] == 0


def test_verify_detects_bit_flip(capsys, tmp_path, monkeypatch):
    shutil.copytree(fx.data_root(), tmp_path / "data")
    monkeypatch.setenv(fx.ENV_ROOT, str(tmp_path / "data"))
    p = tmp_path / "data" / "fixtures" / "periodic-two-sided.json"
    p.write_text(p.read_text().replace("1", "0", 1))
    code, out, _ = run(capsys, "--format", "json", "fixtures", "verify")
    rep = json.loads(out)
    assert code == 2 and rep["failures"][0][0] == "periodic-two-sided"


def test_single_commands(capsys):
    code, out, _ = run(capsys, "--format", "json", "classify", "periodic-left-tail")
    assert code == 0 and json.loads(out)["acyclic"]
    code, out, _ = run(capsys, "--format", "json", "certify-check", "cert-contra-left-tail")
    assert code == 0 and json.loads(out)["status"] == "certified contraacyclic"
    code, out, _ = run(capsys, "--format", "json", "cdg", "hom", "cdg-mf", "cdg-mf-swap")
    assert code == 0 and json.loads(out)["d2_zero"]
    code, out, _ = run(capsys, "cdg", "validate", "cdg-mf", "cdg-uncurved")
    assert code == 0
    code, out, _ = run(capsys, "--format", "json", "cdg", "package", "cdg-mf", "cdg-mf-swap")
    assert code == 0 and "module side only" in json.loads(out)["scope"]
    code, out, _ = run(capsys, "--format", "json", "check", "1")
    assert code == 0 and json.loads(out)["pass"]


def test_scenarios_listed():
    assert {"three-truncations", "empty", "failing-expectation", "acceptance"} <= set(shipped_scenarios())


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "twokinds", "run", "--scenario", "empty"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "scenario empty: ok" in out.stdout
