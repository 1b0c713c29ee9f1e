"""Command-line driver: scenarios in, deterministic reports out.

A scenario (schema ``scenario/1``) lists operations by registry name, each
with fixture references and optional expectation clauses.  ``run`` executes
them in order and writes a ``report/1`` document holding the digest of every
input, every output and every expectation verdict.  Reports carry no times or
paths, so repeated runs are byte-identical.

Exit codes: 0 all expectations hold, 1 an expectation failed, 2 schema error
or corrupted fixture, 3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from . import fixtures as fx
from . import serialize as ser

EXIT_OK, EXIT_EXPECTATION, EXIT_SCHEMA, EXIT_BUDGET = 0, 1, 2, 3


class BudgetError(RuntimeError):
    pass


# --- operation registry ----------------------------------------------------------------------

def _one(inputs, role):
    return fx.load(inputs[role])


def op_classify(inputs, params, budget):
    from .chain import homology_ranks, is_acyclic
    C = _one(inputs, "complex")
    C = getattr(C, "complex", C)
    ranks = homology_ranks(C)
    return {"acyclic": is_acyclic(C), "checked_degrees": [min(ranks), max(ranks)] if ranks else [],
            "homology_ranks": {str(i): r for i, r in sorted(ranks.items())}}


def _target_of(cert_name, inputs):
    return inputs.get("target") or fx.load_document(cert_name).get("target")


def op_certify_check(inputs, params, budget):
    from .derived import check_certificate, membership_status
    name = inputs["certificate"]
    cert = fx.load(name)
    target = _target_of(name, inputs)
    X = fx.load(target)
    chk = check_certificate(cert, X)
    return {"flavor": cert.flavor, "target": target, "valid": chk.ok,
            "failures": [list(f) for f in chk.failures], "status": membership_status(cert, X)}


def op_membership(inputs, params, budget):
    from .derived import membership_status
    cert = fx.load(inputs["certificate"]) if inputs.get("certificate") else None
    return {"status": membership_status(cert, fx.load(inputs["target"]))}


def op_mutations(inputs, params, budget):
    from .derived import check_certificate, single_field_mutations
    name = inputs["certificate"]
    cert, X = fx.load(name), fx.load(_target_of(name, inputs))
    rejected, located, harmless = 0, [], []
    for desc, m in single_field_mutations(cert):
        chk = check_certificate(m, X)
        if chk.ok:
            harmless.append(desc)
        else:
            rejected += 1
            located.append(chk.failures[0][0])
    return {"rejected": rejected, "all_located": all(p.startswith("root") for p in located),
            "first_locations": located[:5], "harmless": harmless}


def op_hom_rank(inputs, params, budget):
    from .derived import linear_h0_rank
    return {"h0_rank": linear_h0_rank(_one(inputs, "source"), _one(inputs, "target"))}


def op_degreewise(inputs, params, budget):
    from .derived import is_degreewise_injective, is_degreewise_projective
    M = _one(inputs, "module")
    return {"projective": is_degreewise_projective(M), "injective": is_degreewise_injective(M)}


def op_reflect(inputs, params, budget):
    from .derived import reflect_via_triangle, split_reflection_witness
    A, wit = split_reflection_witness(_one(inputs, "module"), _one(inputs, "complement"))
    res = reflect_via_triangle(A, wit, [(t, fx.load(t)) for t in inputs["tests"]])
    return {"verdict": res["verdict"], "results": res["results"], "scope": res["scope"]}


def op_nerve_count(inputs, params, budget):
    from .dgnerve import EnumerationBudgetExceeded, brute_force_count, enumerate_simplices
    A = _one(inputs, "category")
    n = int(params.get("n", 2))
    try:
        got = len(enumerate_simplices(A, n, budget=budget if budget is not None else 2_000_000))
    except EnumerationBudgetExceeded as e:
        raise BudgetError(str(e)) from None
    out = {"n": n, "enumerated": got}
    if params.get("brute_force", True):
        out["brute_force"] = brute_force_count(A, n)
    return out


def op_h0_iso(inputs, params, budget):
    from .dgcat import h0_category
    from .dgnerve import h0_of_nerve
    from .fincat import find_category_isomorphism, materialize
    A = _one(inputs, "category")
    P, _ = h0_of_nerve(A, budget=budget if budget is not None else 2_000_000)
    C1, C2 = materialize(P, 2), h0_category(A)
    return {"morphisms": [len(C1.morphisms), len(C2.morphisms)],
            "isomorphic": find_category_isomorphism(C1, C2) is not None}


def op_correspondence(inputs, params, budget):
    from .comod import check_correspondence
    rep = check_correspondence(_one(inputs, "coalgebra"), int(params.get("v", 1)))
    return {"ok": rep.ok, "comodule_dims": list(rep.comodule_dims),
            "contramodule_dims": list(rep.contramodule_dims),
            "methods": [rep.comodule_method, rep.contramodule_method]}


def op_cdg_validate(inputs, params, budget):
    from .cdg import validate_cdg_module
    rep = validate_cdg_module(_one(inputs, "module"))
    return {"valid": rep.ok, "issues": list(rep.issues)}


def op_cdg_hom(inputs, params, budget):
    from .cdg import cdg_hom_complex
    from .chain import homology, validate_complex
    H = cdg_hom_complex(_one(inputs, "source"), _one(inputs, "target"))
    out = {"d2_zero": validate_complex(H).ok, "lo": H.lo, "ranks": list(H.ranks)}
    out["h0"] = homology(H, 0).rank if not H.is_empty and H.lo <= 0 <= H.hi else 0
    return out


def op_cdg_package(inputs, params, budget):
    from .cdg import cdg_to_derived_kinds
    mods = [fx.load(m) for m in inputs["modules"]]
    A = cdg_to_derived_kinds(mods, names=list(inputs["modules"]))
    return {"objects": list(A.objects), "valid": True,
            "scope": "module side only; comodule and contramodule sides are not modelled"}


def op_verify_fixtures(inputs, params, budget):
    return {"failures": [list(f) for f in fx.verify()]}


def op_desk_check(inputs, params, budget):
    n = int(params["criterion"])
    if n not in checks.CHECKS:
        raise ser.SchemaError(f"no desk check for criterion {n}")
    return checks.CHECKS[n]()


_suite_memo = {}


def _suite_pair():
    """Two consecutive runs of the non-meta scenarios, shared by the guard ops
    of a single scenario run."""
    if "pair" not in _suite_memo:
        first = _suite_reports(exclude_meta=True)
        fx._cache.clear()
        _suite_memo["pair"] = (first, _suite_reports(exclude_meta=True))
    return _suite_memo["pair"]


def op_nonclaim_scan(inputs, params, budget):
    reports = _suite_pair()[0]
    hits = {}
    for name, text in reports.items():
        found = checks.scan_for_nonmembership(text)
        if found:
            hits[name] = found
    return {"scenarios_scanned": sorted(reports), "forbidden_hits": hits}


def op_determinism(inputs, params, budget):
    first, second = _suite_pair()
    diff = sorted(k for k in set(first) | set(second) if first.get(k) != second.get(k))
    return {"scenarios": sorted(first), "identical": not diff, "differing": diff}


OPS = {
    "classify": (("complex",), op_classify),
    "certify-check": (("certificate",), op_certify_check),
    "membership": (("target",), op_membership),
    "mutations": (("certificate",), op_mutations),
    "hom-rank": (("source", "target"), op_hom_rank),
    "degreewise": (("module",), op_degreewise),
    "reflect": (("module", "complement", "tests"), op_reflect),
    "nerve-count": (("category",), op_nerve_count),
    "h0-iso": (("category",), op_h0_iso),
    "correspondence": (("coalgebra",), op_correspondence),
    "cdg-validate": (("module",), op_cdg_validate),
    "cdg-hom": (("source", "target"), op_cdg_hom),
    "cdg-package": (("modules",), op_cdg_package),
    "verify-fixtures": ((), op_verify_fixtures),
    "desk-check": ((), op_desk_check),
    "nonclaim-scan": ((), op_nonclaim_scan),
    "determinism": ((), op_determinism),
}
META_OPS = {"nonclaim-scan", "determinism"}


# --- scenarios ---------------------------------------------------------------------------------

def scenario_dir():
    return fx.data_root() / "scenarios"


def shipped_scenarios():
    return sorted(p.stem for p in scenario_dir().glob("*.json"))


def load_scenario(ref):
    p = Path(ref)
    if not p.suffix:
        p = scenario_dir() / f"{ref}.json"
    if not p.exists():
        raise ser.SchemaError(f"scenario {ref!r} not found")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ser.SchemaError(f"scenario {ref!r} is not valid JSON: {e}") from None
    validate_scenario(doc)
    return doc


def _refs(value):
    return [value] if isinstance(value, str) else list(value)


def validate_scenario(doc):
    if not isinstance(doc, dict) or doc.get("schema") != "scenario/1":
        raise ser.SchemaError("scenario must have schema 'scenario/1'")
    ops = doc.get("operations")
    if not isinstance(ops, list):
        raise ser.SchemaError("scenario needs an 'operations' list")
    known = {f["name"] for f in fx.list_fixtures()}
    for k, op in enumerate(ops):
        where = f"operations[{k}]"
        if not isinstance(op, dict) or op.get("op") not in OPS:
            raise ser.SchemaError(f"{where}: unknown operation {op.get('op') if isinstance(op, dict) else op!r}")
        roles, _ = OPS[op["op"]]
        inputs = op.get("inputs", {})
        if not isinstance(inputs, dict):
            raise ser.SchemaError(f"{where}: inputs must be an object")
        for r in roles:
            if r not in inputs:
                raise ser.SchemaError(f"{where}: missing input {r!r}")
        for r, v in inputs.items():
            for name in _refs(v):
                if name not in known:
                    raise ser.SchemaError(f"{where}.inputs.{r}: unresolved fixture {name!r}")
        if not isinstance(op.get("expect", {}), dict) or not isinstance(op.get("params", {}), dict):
            raise ser.SchemaError(f"{where}: expect and params must be objects")


def _lookup(obj, path):
    for part in path.split("."):
        if isinstance(obj, dict) and part in obj:
            obj = obj[part]
        else:
            return _MISSING
    return obj


_MISSING = object()


def _holds(actual, expected):
    if isinstance(expected, dict) and len(expected) == 1:
        (k, v), = expected.items()
        if k == "$ge":
            return isinstance(actual, (int, float)) and actual >= v
        if k == "$le":
            return isinstance(actual, (int, float)) and actual <= v
        if k == "$len":
            return hasattr(actual, "__len__") and len(actual) == v
    return actual == expected


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def run_scenario(doc, budget=None):
    """Execute a validated scenario; returns (report, exit code)."""
    inputs_digest = {}
    results = []
    code = EXIT_OK
    _suite_memo.clear()
    for k, op in enumerate(doc["operations"]):
        name = op["op"]
        inputs = op.get("inputs", {})
        for v in inputs.values():
            for ref in _refs(v):
                inputs_digest[ref] = ser.digest(fx.load_document(ref))
        entry = {"index": k, "op": name, "inputs": inputs, "params": op.get("params", {})}
        try:
            out = OPS[name][1](inputs, op.get("params", {}), budget)
        except BudgetError as e:
            entry["output"] = {"error": f"budget exceeded: {e}"}
            entry["ok"] = False
            results.append(entry)
            return _report(doc, inputs_digest, results), EXIT_BUDGET
        except ser.SchemaError:
            raise
        except (ValueError, TypeError, ArithmeticError) as e:
            out = {"error": f"{type(e).__name__}: {e}"}
        entry["output"] = _jsonable(out)
        verdicts = []
        for path, want in sorted(op.get("expect", {}).items()):
            got = _lookup(entry["output"], path)
            ok = got is not _MISSING and _holds(got, want)
            verdicts.append({"path": f"operations[{k}].output.{path}", "expected": want,
                             "actual": None if got is _MISSING else got, "holds": ok})
        entry["expectations"] = verdicts
        entry["ok"] = "error" not in out and all(v["holds"] for v in verdicts)
        if not entry["ok"]:
            code = EXIT_EXPECTATION
        results.append(entry)
    return _report(doc, inputs_digest, results), code


def _report(doc, inputs_digest, results):
    return {"schema": "report/1", "scenario": doc.get("name", ""), "scenario_digest": ser.digest(doc),
            "inputs": dict(sorted(inputs_digest.items())), "results": results,
            "ok": all(r["ok"] for r in results)}


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    lines = [f"scenario {report['scenario']}: {'ok' if report['ok'] else 'FAILED'}"]
    for r in report["results"]:
        head = f"  [{'ok' if r['ok'] else 'FAIL'}] {r['index']} {r['op']}"
        if r["inputs"]:
            head += " " + ", ".join(f"{k}={v}" for k, v in sorted(r["inputs"].items()))
        lines.append(head)
        if "error" in r["output"]:
            lines.append(f"      {r['output']['error']}")
        for v in r.get("expectations", []):
            if not v["holds"]:
                lines.append(f"      at {v['path']}: expected {v['expected']!r}, got {v['actual']!r}")
    return "\n".join(lines) + "\n"


def _suite_members(exclude_meta=False):
    out = []
    for name in shipped_scenarios():
        doc = load_scenario(name)
        if doc.get("expect_failure"):
            continue
        if exclude_meta and any(op["op"] in META_OPS for op in doc["operations"]):
            continue
        out.append((name, doc))
    return out


def _suite_reports(exclude_meta=False):
    return {name: render(run_scenario(doc)[0], "json") for name, doc in _suite_members(exclude_meta)}


def run_suite(fmt="json"):
    """Every shipped scenario (except demonstrations of failure), in name order."""
    texts, code = {}, EXIT_OK
    for name, doc in _suite_members():
        rep, c = run_scenario(doc)
        texts[name] = render(rep, fmt)
        code = max(code, c)
    return texts, code


# --- argument parsing ------------------------------------------------------------------------------

def _emit(obj, fmt):
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(_text(obj))


def _text(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in sorted(obj.items()):
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:\n" + _text(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {x}" for x in obj) + "\n"
    return f"{pad}{obj}\n"


def _single(op, inputs, params=None, budget=None):
    doc = {"schema": "scenario/1", "name": op, "operations": [{"op": op, "inputs": inputs,
                                                               "params": params or {}}]}
    validate_scenario(doc)
    rep, code = run_scenario(doc, budget)
    return rep["results"][0]["output"], code


def build_parser():
    p = argparse.ArgumentParser(prog="twokinds", description="Exact desk checks for complexes, "
                                "DG-categories, comodules and curved modules.")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--budget", type=int, default=None, help="cap on enumerated simplices")
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="execute a scenario file or shipped scenario name")
    r.add_argument("--scenario", required=True)
    sub.add_parser("suite", help="run every shipped scenario")
    sub.add_parser("scenarios", help="list shipped scenarios")
    f = sub.add_parser("fixtures", help="list, verify or rebuild shipped fixtures")
    f.add_argument("action", choices=["list", "verify", "build"])
    c = sub.add_parser("classify", help="ordinary acyclicity of a complex fixture")
    c.add_argument("name")
    cc = sub.add_parser("certify-check", help="validate an acyclicity certificate fixture")
    cc.add_argument("name")
    dc = sub.add_parser("check", help="run the desk check for one acceptance criterion")
    dc.add_argument("criterion", type=int)
    g = sub.add_parser("cdg", help="curved modules")
    g.add_argument("action", choices=["validate", "hom", "package"])
    g.add_argument("names", nargs="+")
    for sp in sub.choices.values():
        sp.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
        sp.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        if args.cmd == "run":
            doc = load_scenario(args.scenario)
            rep, code = run_scenario(doc, args.budget)
            sys.stdout.write(render(rep, fmt))
            return code
        if args.cmd == "suite":
            texts, code = run_suite(fmt)
            for name in sorted(texts):
                sys.stdout.write(texts[name])
            return code
        if args.cmd == "scenarios":
            _emit(shipped_scenarios(), fmt)
            return EXIT_OK
        if args.cmd == "fixtures":
            if args.action == "list":
                _emit(fx.list_fixtures(), fmt)
                return EXIT_OK
            if args.action == "build":
                _emit(fx.write_fixtures(), fmt)
                return EXIT_OK
            bad = fx.verify()
            _emit({"ok": not bad, "failures": [list(b) for b in bad]}, fmt)
            return EXIT_OK if not bad else EXIT_SCHEMA
        if args.cmd == "check":
            out, code = _single("desk-check", {}, {"criterion": args.criterion})
            _emit(out, fmt)
            return EXIT_OK if out.get("pass") else EXIT_EXPECTATION
        if args.cmd == "classify":
            out, code = _single("classify", {"complex": args.name})
        elif args.cmd == "certify-check":
            out, code = _single("certify-check", {"certificate": args.name})
            if code == EXIT_OK and not out.get("valid"):
                code = EXIT_EXPECTATION
        else:
            if args.action == "validate":
                outs = [_single("cdg-validate", {"module": n}) for n in args.names]
                out = {n: o for n, (o, _) in zip(args.names, outs)}
                code = max(c for _, c in outs)
                if not all(o.get("valid") for o in out.values()):
                    code = EXIT_EXPECTATION
            elif args.action == "hom":
                if len(args.names) != 2:
                    raise ser.SchemaError("cdg hom needs exactly two module names")
                out, code = _single("cdg-hom", {"source": args.names[0], "target": args.names[1]})
            else:
                out, code = _single("cdg-package", {"modules": args.names})
        _emit(out, fmt)
        return code
    except (ser.SchemaError, fx.FixtureError) as e:
        sys.stderr.write(f"schema error: {e}\n")
        return EXIT_SCHEMA
    except BudgetError as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
