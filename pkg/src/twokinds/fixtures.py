"""Shipped fixtures: deterministic builders, on-disk documents and verification.

The documents under ``data/fixtures`` are produced by :func:`build_documents`
and listed with their digests in ``MANIFEST.json``.  ``verify`` decodes every
document, re-runs its structural checks and compares digests, so a corrupted
file is reported with the object path that failed.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

from . import serialize as ser
from .cdg import matrix_factorization_pair, rank_one_curved, uncurved_rank_one, validate_cdg_module
from .chain import ChainComplex, ChainMap, cone, validate_complex
from .comod import (a2_coalgebra, dual_numbers_coalgebra, kronecker_coalgebra, trivial_coalgebra,
                    validate_coalgebra)
from .dgcat import (degreewise_module, dual_numbers, ground_field, module_dg_category, module_over,
                    module_shift, validate_dg_category)
from .linalg import F, Mat

ENV_ROOT = "TWOKINDS_FIXTURES"
WINDOW = 4   # copies of R in the windowed truncations


def data_root():
    env = os.environ.get(ENV_ROOT)
    return Path(env) if env else Path(__file__).parent / "data"


# --- objects over the dual numbers ------------------------------------------------------

def _dual():
    K = F(2)
    R = dual_numbers(K)
    X = Mat(K, [[0, 0], [1, 0]])               # multiplication by x on basis (1, x)
    socle = Mat(K, [[0], [1]])                 # k -> R, 1 -> x
    quotient = Mat(K, [[1, 0]])                # R -> k
    mats = ({1: Mat.identity(K, 1), 2: Mat.identity(K, 2)}, {1: Mat(K, [[0]]), 2: X})
    return K, R, X, socle, quotient, mats


def periodic_two_sided():
    """... -> R -> R -> R -> ... with every map multiplication by x."""
    K, R, X, *_ = _dual()
    return ChainComplex(K, 0, 1, (2, 2), (X,), 1, 1)


def periodic_left_tail():
    """... -> R -> R -> k -> 0, the quotient map into k in degree 0."""
    K, R, X, socle, quotient, _ = _dual()
    return ChainComplex(K, -2, 0, (2, 2, 1), (X, quotient), 1, None)


def periodic_right_tail():
    """0 -> k -> R -> R -> ..., k in degree 0 mapping onto the socle."""
    K, R, X, socle, quotient, _ = _dual()
    return ChainComplex(K, 0, 2, (1, 2, 2), (socle, X), None, 1)


def _windowed(lo, L):
    K, R, X, socle, quotient, mats = _dual()
    C = ChainComplex.from_diffs(K, lo, [1] + [2] * L + [1], [socle] + [X] * (L - 1) + [quotient])
    return degreewise_module(R, C, mats)


def windowed_left_tail(L=WINDOW):
    """Bounded model of the left tail: k -> R -> ... -> R -> k ending in degree 0."""
    M = _windowed(-L - 1, L)
    return type(M)(M.ring, M.complex, M.action, "left-tail-windowed")


def windowed_right_tail(L=WINDOW):
    """Bounded model of the right tail: k -> R -> ... -> R -> k starting in degree 0."""
    M = _windowed(0, L)
    return type(M)(M.ring, M.complex, M.action, "right-tail-windowed")


def windowed_two_sided(L=3):
    """R -> R -> ... -> R (L copies) with multiplication by x; degreewise free."""
    K, R, X, _, _, mats = _dual()
    C = ChainComplex.from_diffs(K, 0, [2] * L, [X] * (L - 1))
    return degreewise_module(R, C, mats, "two-sided-windowed")


def free_rank_one(degree=0):
    K, R, _, _, _, mats = _dual()
    M = degreewise_module(R, ChainComplex.concentrated(K, 2, 0), mats, "R")
    if degree:
        M = module_shift(M, -degree)
        M = type(M)(M.ring, M.complex, M.action, f"R[{-degree}]")
    return M


def residue_field_module():
    K, R, _, _, _, mats = _dual()
    return degreewise_module(R, ChainComplex.concentrated(K, 1, 0), mats, "k")


def certificate_right_tail():
    from .derived import certify_bounded_acyclic
    return certify_bounded_acyclic(windowed_right_tail(), "co")


def certificate_left_tail():
    from .derived import certify_bounded_acyclic
    return certify_bounded_acyclic(windowed_left_tail(), "contra")


def dual_numbers_module_category():
    R = dual_numbers(F(2))
    return module_dg_category(R, [free_rank_one(), windowed_left_tail(2)], names=["R", "left-tail"],
                              name="dual-numbers-modules")


# --- small DG-category ------------------------------------------------------------------

def three_object_category():
    """k[0], the cone of its identity, and k[1] over F_2."""
    K = F(2)
    k = ground_field(K)
    A = ChainComplex.concentrated(K, 1, 0)
    Cn = cone(ChainMap.identity(A))[0]
    E = ChainComplex.concentrated(K, 1, 1)
    return module_dg_category(k, [module_over(k, A), module_over(k, Cn), module_over(k, E)],
                              names=["A", "C", "E"], name="three-object")


# --- registry -----------------------------------------------------------------------------

def _registry():
    return {
        "periodic-two-sided": lambda: ser.chain_to_json(periodic_two_sided()),
        "periodic-left-tail": lambda: ser.chain_to_json(periodic_left_tail()),
        "periodic-right-tail": lambda: ser.chain_to_json(periodic_right_tail()),
        "windowed-left-tail": lambda: ser.module_to_json(windowed_left_tail()),
        "windowed-right-tail": lambda: ser.module_to_json(windowed_right_tail()),
        "windowed-two-sided": lambda: ser.module_to_json(windowed_two_sided()),
        "free-rank-one": lambda: ser.module_to_json(free_rank_one()),
        "free-rank-one-up": lambda: ser.module_to_json(free_rank_one(1)),
        "free-rank-one-down": lambda: ser.module_to_json(free_rank_one(-1)),
        "residue-field": lambda: ser.module_to_json(residue_field_module()),
        "cert-co-right-tail": lambda: dict(ser.certificate_to_json(certificate_right_tail()),
                                           target="windowed-right-tail"),
        "cert-contra-left-tail": lambda: dict(ser.certificate_to_json(certificate_left_tail()),
                                              target="windowed-left-tail"),
        "dg-three-object": lambda: ser.dgcat_to_json(three_object_category()),
        "dg-dual-numbers-modules": lambda: ser.dgcat_to_json(dual_numbers_module_category()),
        "coalg-trivial": lambda: ser.coalgebra_to_json(trivial_coalgebra(F(2))),
        "coalg-dual-numbers": lambda: ser.coalgebra_to_json(dual_numbers_coalgebra(F(2))),
        "coalg-a2": lambda: ser.coalgebra_to_json(a2_coalgebra(F(3))),
        "coalg-kronecker": lambda: ser.coalgebra_to_json(kronecker_coalgebra(F(3))),
        "cdg-rank-one-f2": lambda: ser.cdg_to_json(rank_one_curved(F(2))),
        "cdg-rank-one-f3": lambda: ser.cdg_to_json(rank_one_curved(F(3))),
        "cdg-mf": lambda: ser.cdg_to_json(matrix_factorization_pair(F(2))[0]),
        "cdg-mf-swap": lambda: ser.cdg_to_json(matrix_factorization_pair(F(2))[1]),
        "cdg-uncurved": lambda: ser.cdg_to_json(uncurved_rank_one(F(2))),
    }


def names():
    return sorted(_registry())


def build_documents():
    return {name: build() for name, build in sorted(_registry().items())}


def write_fixtures(root=None):
    root = Path(root) if root else data_root()
    fx = root / "fixtures"
    fx.mkdir(parents=True, exist_ok=True)
    docs = build_documents()
    manifest = {}
    for name, doc in docs.items():
        (fx / f"{name}.json").write_text(json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n")
        manifest[name] = ser.digest(doc)
    (fx / "MANIFEST.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    return manifest


class FixtureError(ValueError):
    pass


_cache = {}


def load_document(name, root=None):
    path = (Path(root) if root else data_root()) / "fixtures" / f"{name}.json"
    if not path.exists():
        raise FixtureError(f"unknown fixture {name!r}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise FixtureError(f"{name}: not valid JSON ({e})") from None


def load(name, root=None):
    """Decoded fixture object (certificates come with their target name)."""
    key = (name, str(Path(root) if root else data_root()))
    if key not in _cache:
        _cache[key] = ser.load(load_document(name, root))
    return _cache[key]


def list_fixtures(root=None):
    fx = (Path(root) if root else data_root()) / "fixtures"
    out = []
    for p in sorted(fx.glob("*.json"), key=lambda q: q.stem):
        if p.name == "MANIFEST.json":
            continue
        doc = json.loads(p.read_text())
        out.append({"name": p.stem, "schema": doc.get("schema")})
    return out


def _check(name, doc, root):
    """Structural problems of one decoded fixture as (path, message) pairs."""
    obj = ser.load(doc)
    schema = doc["schema"]
    if schema == "chain/1":
        return [(f"{name}", x) for x in validate_complex(obj).issues]
    if schema == "dgmod/1":
        return [(f"{name}", x) for x in obj.validate()]
    if schema == "dgcat/1":
        return [(f"{name}", x) for x in validate_dg_category(obj)]
    if schema == "coalg/1":
        return [(f"{name}", x) for x in validate_coalgebra(obj).issues]
    if schema == "cdg/1":
        return [(f"{name}", x) for x in validate_cdg_module(obj).issues]
    if schema == "cert/1":
        from .derived import check_certificate
        target = doc.get("target")
        if target is None:
            return [(name, "certificate names no target")]
        chk = check_certificate(obj, ser.load(load_document(target, root)))
        return [(f"{name}:{p}", m) for p, m in chk.failures]
    return []


def verify(root=None):
    """Re-validate every shipped fixture; returns a list of located failures."""
    base = (Path(root) if root else data_root()) / "fixtures"
    failures = []
    try:
        manifest = json.loads((base / "MANIFEST.json").read_text())
    except (OSError, json.JSONDecodeError) as e:
        return [("MANIFEST.json", f"unreadable: {e}")]
    present = {p.stem for p in base.glob("*.json") if p.name != "MANIFEST.json"}
    for name in sorted(set(manifest) | present):
        if name not in manifest:
            failures.append((name, "not listed in the manifest"))
            continue
        if name not in present:
            failures.append((name, "listed in the manifest but missing"))
            continue
        try:
            doc = load_document(name, root)
            failures += _check(name, doc, root)
        except (FixtureError, ser.SchemaError, ValueError) as e:
            failures.append((name, f"cannot decode: {e}"))
            continue
        if ser.digest(doc) != manifest[name]:
            failures.append((name, "digest differs from the manifest"))
    return failures
