"""JSON documents for every persistent object, tagged with a schema name.

Matrices are ``[rows, cols, [[entry, ...], ...]]`` so empty shapes survive a
round trip.  Entries use the coefficient's canonical encoding.  Simplex
labels are nested tuples; they are written as nested lists and read back as
tuples.
"""
from __future__ import annotations

import hashlib
import json

from .cdg import CDGModule, CDGRing, GradedSpace
from .chain import ChainComplex
from .comod import Coalgebra, LeftComodule, LeftContramodule, RightComodule
from .dgcat import DGModulePresentation, GradedRingPresentation, SmallDGCategory
from .dgnerve import DGNerveSimplex
from .dold_kan import SimplicialAbelianGroup
from .linalg import Coefficient, Mat
from .simplicial import FiniteSimplicialSet


class SchemaError(ValueError):
    pass


def canonical(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(doc):
    return hashlib.sha256(canonical(doc).encode()).hexdigest()


def _need(doc, schema):
    if not isinstance(doc, dict) or doc.get("schema") != schema:
        got = doc.get("schema") if isinstance(doc, dict) else type(doc).__name__
        raise SchemaError(f"expected schema {schema!r}, got {got!r}")


def _get(doc, key):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    return doc[key]


# --- primitives ------------------------------------------------------------------------

def enc_mat(m):
    K = m.K
    return [m.shape[0], m.shape[1], [[K.encode(x) for x in row] for row in m.rows]]


def dec_mat(K, doc):
    try:
        r, c, rows = doc
        if len(rows) != r or any(len(row) != c for row in rows):
            raise SchemaError("matrix rows disagree with its shape")
        return Mat(K, [[K.decode(x) for x in row] for row in rows], c)
    except (TypeError, ValueError) as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(f"bad matrix: {e}") from None


def enc_vec(K, v):
    return [K.encode(x) for x in v]


def dec_vec(K, v):
    return tuple(K.decode(x) for x in v)


def enc_label(x):
    if isinstance(x, tuple):
        return [enc_label(y) for y in x]
    return x


def dec_label(x):
    if isinstance(x, list):
        return tuple(dec_label(y) for y in x)
    return x


def enc_comps(comps):
    return [[int(d), enc_mat(m)] for d, m in comps]


def dec_comps(K, doc):
    return tuple((int(d), dec_mat(K, m)) for d, m in doc)


# --- chain/1 -----------------------------------------------------------------------------

def chain_to_json(C):
    return {"schema": "chain/1", "field": C.K.to_json(), "lo": C.lo, "hi": C.hi, "ranks": list(C.ranks),
            "diffs": [enc_mat(m) for m in C.diffs], "left_period": C.left_period,
            "right_period": C.right_period}


def chain_from_json(doc):
    _need(doc, "chain/1")
    K = Coefficient.from_json(_get(doc, "field"))
    return ChainComplex(K, int(_get(doc, "lo")), int(_get(doc, "hi")), tuple(_get(doc, "ranks")),
                        tuple(dec_mat(K, m) for m in _get(doc, "diffs")),
                        doc.get("left_period"), doc.get("right_period"))


# --- rings and modules -------------------------------------------------------------------

def ring_to_json(R):
    K = R.K
    return {"field": K.to_json(), "degrees": list(R.degrees),
            "mult": [[enc_vec(K, v) for v in row] for row in R.mult], "unit": enc_vec(K, R.unit),
            "diff": enc_mat(R.diff) if R.diff is not None else None, "names": list(R.names)}


def ring_from_json(doc):
    K = Coefficient.from_json(_get(doc, "field"))
    mult = tuple(tuple(dec_vec(K, v) for v in row) for row in _get(doc, "mult"))
    diff = doc.get("diff")
    return GradedRingPresentation(K, tuple(_get(doc, "degrees")), mult, dec_vec(K, _get(doc, "unit")),
                                  dec_mat(K, diff) if diff is not None else None, tuple(doc.get("names", ())))


def _enc_action(action):
    return [[[int(i), enc_mat(m)] for i, m in sorted(a.items())] for a in action]


def _dec_action(K, doc):
    return tuple({int(i): dec_mat(K, m) for i, m in a} for a in doc)


def module_to_json(M, with_ring=True):
    doc = {"schema": "dgmod/1", "complex": chain_to_json(M.complex), "action": _enc_action(M.action),
           "name": M.name}
    if with_ring:
        doc["ring"] = ring_to_json(M.ring)
    return doc


def module_from_json(doc, ring=None):
    _need(doc, "dgmod/1")
    R = ring_from_json(doc["ring"]) if "ring" in doc else ring
    if R is None:
        raise SchemaError("module without a ring")
    C = chain_from_json(_get(doc, "complex"))
    return DGModulePresentation(R, C, _dec_action(R.K, _get(doc, "action")), doc.get("name", ""))


# --- dgcat/1 -------------------------------------------------------------------------------

def dgcat_to_json(A):
    K = A.K
    return {"schema": "dgcat/1", "field": K.to_json(), "name": A.name, "objects": list(A.objects),
            "homs": [{"src": X, "tgt": Y, "complex": chain_to_json(A.homs[(X, Y)])}
                     for X in A.objects for Y in A.objects],
            "comp": [{"key": list(k), "matrix": enc_mat(m)} for k, m in sorted(A.comp.items(), key=repr)],
            "identity": [{"object": X, "vector": enc_vec(K, A.identity[X])} for X in A.objects]}


def dgcat_from_json(doc):
    _need(doc, "dgcat/1")
    K = Coefficient.from_json(_get(doc, "field"))
    homs = {(h["src"], h["tgt"]): chain_from_json(h["complex"]) for h in _get(doc, "homs")}
    comp = {tuple(c["key"]): dec_mat(K, c["matrix"]) for c in _get(doc, "comp")}
    ident = {e["object"]: dec_vec(K, e["vector"]) for e in _get(doc, "identity")}
    return SmallDGCategory(K, tuple(_get(doc, "objects")), homs, comp, ident, doc.get("name", ""))


# --- dgnerve/1 --------------------------------------------------------------------------------

def simplices_to_json(K, simplices):
    return {"schema": "dgnerve/1", "field": K.to_json(),
            "simplices": [{"objects": list(s.objects), "comps": [[list(I), enc_vec(K, v)] for I, v in s.comps]}
                          for s in simplices]}


def simplices_from_json(doc):
    _need(doc, "dgnerve/1")
    K = Coefficient.from_json(_get(doc, "field"))
    return [DGNerveSimplex.make(s["objects"], {tuple(I): dec_vec(K, v) for I, v in s["comps"]})
            for s in _get(doc, "simplices")]


# --- sset/1 and sag/1 ----------------------------------------------------------------------------

def sset_to_json(S):
    faces = []
    for x in S.labels():
        if S.dim_of(x) > 0:
            faces.append([enc_label(x), [[enc_label(y), list(tau)] for y, tau in S.faces[x]]])
    return {"schema": "sset/1", "name": S.name, "cap": S.cap,
            "cells": [[enc_label(x) for x in layer] for layer in S.cells], "faces": faces}


def sset_from_json(doc):
    _need(doc, "sset/1")
    cells = [[dec_label(x) for x in layer] for layer in _get(doc, "cells")]
    faces = {dec_label(x): [(dec_label(y), tuple(tau)) for y, tau in fs] for x, fs in _get(doc, "faces")}
    return FiniteSimplicialSet(cells, faces, cap=doc.get("cap"), name=doc.get("name"))


def sag_to_json(G):
    return {"schema": "sag/1", "field": G.K.to_json(), "cap": G.cap, "ranks": list(G.ranks),
            "faces": [[enc_mat(m) for m in layer] for layer in G.faces],
            "degeneracies": [[enc_mat(m) for m in layer] for layer in G.degeneracies]}


def sag_from_json(doc):
    _need(doc, "sag/1")
    K = Coefficient.from_json(_get(doc, "field"))
    return SimplicialAbelianGroup(K, int(_get(doc, "cap")), tuple(_get(doc, "ranks")),
                                  tuple(tuple(dec_mat(K, m) for m in layer) for layer in _get(doc, "faces")),
                                  tuple(tuple(dec_mat(K, m) for m in layer) for layer in _get(doc, "degeneracies")))


# --- coalg/1, comod/1, ctrmod/1 ------------------------------------------------------------------

def coalgebra_to_json(C):
    return {"schema": "coalg/1", "field": C.K.to_json(), "dim": C.dim, "delta": enc_mat(C.delta),
            "counit": enc_mat(C.counit), "degrees": list(C.degrees),
            "differential": enc_mat(C.differential) if C.differential is not None else None,
            "name": C.name}


def coalgebra_from_json(doc):
    _need(doc, "coalg/1")
    K = Coefficient.from_json(_get(doc, "field"))
    d = doc.get("differential")
    return Coalgebra(K, int(_get(doc, "dim")), dec_mat(K, _get(doc, "delta")), dec_mat(K, _get(doc, "counit")),
                     tuple(doc.get("degrees", ())), dec_mat(K, d) if d is not None else None, doc.get("name", ""))


def comodule_to_json(N):
    side = "left" if isinstance(N, LeftComodule) else "right"
    return {"schema": "comod/1", "coalgebra": coalgebra_to_json(N.C), "side": side, "dim": N.dim,
            "coaction": enc_mat(N.coaction), "name": N.name}


def comodule_from_json(doc):
    _need(doc, "comod/1")
    C = coalgebra_from_json(_get(doc, "coalgebra"))
    cls = LeftComodule if _get(doc, "side") == "left" else RightComodule
    return cls(C, int(_get(doc, "dim")), dec_mat(C.K, _get(doc, "coaction")), name=doc.get("name", ""))


def contramodule_to_json(P):
    return {"schema": "ctrmod/1", "coalgebra": coalgebra_to_json(P.C), "dim": P.dim,
            "contraaction": enc_mat(P.contraaction), "name": P.name}


def contramodule_from_json(doc):
    _need(doc, "ctrmod/1")
    C = coalgebra_from_json(_get(doc, "coalgebra"))
    return LeftContramodule(C, int(_get(doc, "dim")), dec_mat(C.K, _get(doc, "contraaction")), doc.get("name", ""))


# --- cdg/1 ------------------------------------------------------------------------------------------

def cdg_to_json(M):
    K = M.K
    S = M.space
    return {"schema": "cdg/1", "ring": ring_to_json(M.ring), "curvature": enc_vec(K, M.cdg.h),
            "ring_name": M.cdg.name, "space": {"lo": S.lo, "hi": S.hi, "ranks": list(S.ranks),
                                               "ops": [enc_mat(m) for m in S.ops]},
            "action": _enc_action(M.action), "name": M.name}


def cdg_from_json(doc):
    _need(doc, "cdg/1")
    B = ring_from_json(_get(doc, "ring"))
    K = B.K
    C = CDGRing(B, dec_vec(K, _get(doc, "curvature")), doc.get("ring_name", ""))
    s = _get(doc, "space")
    S = GradedSpace(K, int(s["lo"]), int(s["hi"]), tuple(s["ranks"]), tuple(dec_mat(K, m) for m in s["ops"]))
    return CDGModule(C, S, _dec_action(K, _get(doc, "action")), doc.get("name", ""))


# --- cert/1 ------------------------------------------------------------------------------------------

def _node_to_json(node):
    from .derived import Cone, FiniteSum, HomotopyEquivalent, Leaf, Shift
    if isinstance(node, Leaf):
        T = node.triple
        return {"node": "leaf", "K": module_to_json(T.K, False), "M": module_to_json(T.M, False),
                "Q": module_to_json(T.Q, False), "iota": enc_comps(T.iota), "pi": enc_comps(T.pi)}
    if isinstance(node, Shift):
        return {"node": "shift", "n": node.n, "child": _node_to_json(node.child)}
    if isinstance(node, Cone):
        return {"node": "cone", "source": _node_to_json(node.source), "target": _node_to_json(node.target),
                "map": enc_comps(node.map)}
    if isinstance(node, FiniteSum):
        return {"node": "sum", "children": [_node_to_json(c) for c in node.children]}
    if isinstance(node, HomotopyEquivalent):
        return {"node": "homotopy_equivalent", "child": _node_to_json(node.child),
                "target": module_to_json(node.target, False), "f": enc_comps(node.f), "g": enc_comps(node.g),
                "h_fg": enc_comps(node.h_fg), "h_gf": enc_comps(node.h_gf)}
    raise SchemaError(f"unknown node {type(node).__name__}")


def _node_from_json(doc, R):
    from .derived import Cone, FiniteSum, HomotopyEquivalent, Leaf, ModuleTriple, Shift
    K = R.K
    kind = _get(doc, "node")
    if kind == "leaf":
        return Leaf(ModuleTriple(module_from_json(doc["K"], R), module_from_json(doc["M"], R),
                                 module_from_json(doc["Q"], R), dec_comps(K, doc["iota"]), dec_comps(K, doc["pi"])))
    if kind == "shift":
        return Shift(int(doc["n"]), _node_from_json(doc["child"], R))
    if kind == "cone":
        return Cone(_node_from_json(doc["source"], R), _node_from_json(doc["target"], R), dec_comps(K, doc["map"]))
    if kind == "sum":
        return FiniteSum(tuple(_node_from_json(c, R) for c in doc["children"]))
    if kind == "homotopy_equivalent":
        return HomotopyEquivalent(_node_from_json(doc["child"], R), module_from_json(doc["target"], R),
                                  dec_comps(K, doc["f"]), dec_comps(K, doc["g"]), dec_comps(K, doc["h_fg"]),
                                  dec_comps(K, doc["h_gf"]))
    raise SchemaError(f"unknown certificate node {kind!r}")


def certificate_to_json(cert):
    return {"schema": "cert/1", "flavor": cert.flavor, "ring": ring_to_json(cert.ring),
            "root": _node_to_json(cert.root)}


def certificate_from_json(doc):
    from .derived import AcyclicityCertificate
    _need(doc, "cert/1")
    R = ring_from_json(_get(doc, "ring"))
    return AcyclicityCertificate(_get(doc, "flavor"), _node_from_json(_get(doc, "root"), R), R)


DECODERS = {
    "chain/1": chain_from_json,
    "dgmod/1": module_from_json,
    "dgcat/1": dgcat_from_json,
    "dgnerve/1": simplices_from_json,
    "sset/1": sset_from_json,
    "sag/1": sag_from_json,
    "coalg/1": coalgebra_from_json,
    "comod/1": comodule_from_json,
    "ctrmod/1": contramodule_from_json,
    "cdg/1": cdg_from_json,
    "cert/1": certificate_from_json,
}


def load(doc):
    """Decode any tagged document."""
    if not isinstance(doc, dict) or "schema" not in doc:
        raise SchemaError("document has no schema tag")
    dec = DECODERS.get(doc["schema"])
    if dec is None:
        raise SchemaError(f"unknown schema {doc['schema']!r}")
    try:
        return dec(doc)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise SchemaError(f"malformed {doc['schema']} document: {e}") from None
