"""Desk checks: each function recomputes one family of facts and compares the
library against an independent brute-force count or a structural identity.

Every function returns a JSON-ready dict with a boolean ``pass`` and no
timing data, so reports are reproducible byte for byte.
"""
from __future__ import annotations

import itertools
import random

from . import fixtures as fx
from .chain import (ChainComplex, ChainMap, ExactTriple, HomSpace, cone, hom_complex, homology,
                    homology_ranks, is_acyclic, shift, totalize_exact_triple, validate_complex)
from .linalg import F, Mat, QQ, kernel_basis, rank


# --- random data -------------------------------------------------------------------------

def random_matrix(rng, K, r, c):
    if K.is_finite:
        return Mat(K, [[rng.randrange(K.p) for _ in range(c)] for _ in range(r)], c)
    return Mat(K, [[rng.randrange(-2, 3) for _ in range(c)] for _ in range(r)], c)


def random_complex(rng, K, max_total=6, lo=None, length=None):
    """A random bounded complex with d² = 0, built by factoring through the
    cokernel of the previous differential."""
    length = length or rng.randint(1, 4)
    lo = rng.randint(-2, 1) if lo is None else lo
    ranks = [0] * length
    for _ in range(rng.randint(0, max_total)):
        ranks[rng.randrange(length)] += 1
    diffs = []
    prev = None
    for i in range(length - 1):
        r, s = ranks[i], ranks[i + 1]
        if prev is None or prev.shape[1] == 0:
            Q = Mat.identity(K, r)
        else:
            left = kernel_basis(prev.T)
            Q = Mat(K, [list(v) for v in left], r) if left else Mat.zeros(K, 0, r)
        M = random_matrix(rng, K, s, Q.shape[0])
        d = M @ Q if Q.shape[0] else Mat.zeros(K, s, r)
        diffs.append(d)
        prev = d
    return ChainComplex.from_diffs(K, lo, ranks, diffs)


def random_chain_map(rng, A, B):
    """A random closed degree-0 element of Hom(A, B)."""
    H = HomSpace(A, B)
    if H.dim(0) == 0:
        return ChainMap.zero(A, B)
    Z = kernel_basis(H.diff_matrix(0)) if H.dim(1) else [tuple(A.K(int(i == j)) for i in range(H.dim(0)))
                                                          for j in range(H.dim(0))]
    K = A.K
    v = [K(0)] * H.dim(0)
    for z in Z:
        c = rng.randrange(K.p) if K.is_finite else rng.randrange(-2, 3)
        v = [K(x + c * y) for x, y in zip(v, z)]
    return ChainMap.make(A, B, H.from_vector(0, tuple(v)))


# --- 1: truncations over the dual numbers -------------------------------------------------

def truncations_acyclic():
    out = {}
    for name in ("periodic-two-sided", "periodic-left-tail", "periodic-right-tail"):
        C = fx.load(name)
        ranks = homology_ranks(C)
        out[name] = {"acyclic": is_acyclic(C), "checked_degrees": [min(ranks), max(ranks)],
                     "homology_ranks": {str(k): v for k, v in sorted(ranks.items())}}
    ok = all(v["acyclic"] and not any(v["homology_ranks"].values()) for v in out.values())
    return {"criterion": 1, "name": "truncations over k[x]/(x^2) are acyclic", "pass": ok, "details": out}


# --- 2: certificates and mutations ---------------------------------------------------------

def certificates_and_mutations(min_rejected=10):
    from .derived import check_certificate, single_field_mutations
    out = {}
    ok = True
    for cname in ("cert-co-right-tail", "cert-contra-left-tail"):
        doc = fx.load_document(cname)
        cert = fx.load(cname)
        X = fx.load(doc["target"])
        valid = check_certificate(cert, X).ok
        muts = single_field_mutations(cert)
        rejected, located, accepted = 0, 0, []
        for desc, m in muts:
            chk = check_certificate(m, X)
            if chk.ok:
                accepted.append(desc)
            else:
                rejected += 1
                located += bool(chk.failures and chk.failures[0][0].startswith("root"))
        out[cname] = {"flavor": cert.flavor, "valid": valid, "mutations": len(muts), "rejected": rejected,
                      "rejected_with_location": located, "harmless_mutations": accepted}
        ok &= valid and rejected >= min_rejected and located == rejected
    return {"criterion": 2, "name": "shipped certificates validate; mutations are rejected", "pass": ok,
            "details": out}


# --- 3 and 13 live in the CLI (they scan scenario reports) ----------------------------------

FORBIDDEN = ("∉", "not coacyclic", "not contraacyclic", "non-member", "is not in acycl",
             "not in the coacyclic", "not in the contraacyclic")


def scan_for_nonmembership(text):
    low = text.lower()
    return [p for p in FORBIDDEN if p in low]


# --- 4: DG nerve -----------------------------------------------------------------------------

def dg_nerve_horns():
    from .dgnerve import (NerveError, brute_force_count, enumerate_simplices, fill_inner_horn_dg, horns,
                          validate_simplex)
    A = fx.load("dg-three-object")
    counts = {}
    layers = {}
    for n in range(4):
        layers[n] = enumerate_simplices(A, n)
        counts[str(n)] = {"enumerated": len(layers[n]), "brute_force": brute_force_count(A, n)}
    horn_stats = {}
    for n, i in ((2, 1), (3, 1), (3, 2)):
        hs = horns(A, n, i, layers[n - 1])
        filled = 0
        for h in hs:
            try:
                s = fill_inner_horn_dg(A, n, i, h)
            except NerveError:
                continue
            filled += not validate_simplex(A, s)
        horn_stats[f"{n},{i}"] = {"horns": len(hs), "filled_and_valid": filled}
    ok = all(c["enumerated"] == c["brute_force"] for c in counts.values()) and \
        all(h["horns"] == h["filled_and_valid"] for h in horn_stats.values())
    return {"criterion": 4, "name": "DG-nerve inner horns fill; counts match brute force", "pass": ok,
            "details": {"counts": counts, "horns": horn_stats}}


# --- 5: homotopy category of the nerve ---------------------------------------------------------

def nerve_h0_isomorphism():
    from .dgcat import h0_category, unit_dg_category
    from .dgnerve import h0_of_nerve
    from .fincat import find_category_isomorphism, is_functor, materialize
    cats = {"dg-three-object": fx.load("dg-three-object"),
            "dg-dual-numbers-modules": fx.load("dg-dual-numbers-modules"),
            "unit-f2": unit_dg_category(F(2))}
    out = {}
    for name, A in cats.items():
        P, S = h0_of_nerve(A)
        C1 = materialize(P, 2)
        C2 = h0_category(A)
        iso = find_category_isomorphism(C1, C2)
        ok = iso is not None and is_functor(C1, C2, *iso)
        out[name] = {"objects": len(C1.objects), "morphisms": len(C1.morphisms), "isomorphism_found": ok}
    return {"criterion": 5, "name": "homotopy category of the DG nerve matches H^0", "pass":
            all(v["isomorphism_found"] for v in out.values()), "details": out}


# --- 6: Dold-Kan ------------------------------------------------------------------------------

def _binomial_rank(C, n):
    from math import comb
    return sum(comb(n, k) * C.rank(-k) for k in range(n + 1))


def dold_kan_round_trips(count=50, seed=6, p=3, max_total=8, cap=3):
    from .dold_kan import (gamma, linear_horn_check, normalize, surjection_count, underlying_simplicial_set,
                           validate_sag)
    from .simplicial import check_horns
    rng = random.Random(seed)
    K = F(p)
    round_trips = rank_ok = horn_ok = 0
    set_level = 0
    for t in range(count):
        length = rng.randint(1, cap + 1)
        C = random_complex(rng, K, max_total, lo=-(length - 1), length=length)
        G = gamma(C, cap)
        if validate_sag(G):
            continue
        N = normalize(G)
        round_trips += N.same_as(C)
        formula = [sum(surjection_count(n, k) * C.rank(-k) for k in range(n + 1)) for n in range(cap + 1)]
        rank_ok += list(G.ranks) == formula
        horn_ok += linear_horn_check(G, cap) is None
    # the underlying simplicial set itself, for complexes small enough to enumerate
    small = [ChainComplex.concentrated(F(2), 1, -1), ChainComplex.concentrated(F(2), 1, 0),
             ChainComplex.from_diffs(F(2), -1, [1, 1], [Mat.identity(F(2), 1)])]
    for C in small:
        S = underlying_simplicial_set(gamma(C, 3), 3)
        set_level += check_horns(S, 3, inner_only=False) is None
    ok = round_trips == rank_ok == horn_ok == count and set_level == len(small)
    return {"criterion": 6, "name": "normalize(gamma(C)) = C and ranks match the surjection count", "pass": ok,
            "details": {"complexes": count, "round_trips": round_trips, "rank_formula": rank_ok,
                        "linear_horn_fill": horn_ok, "set_level_kan": f"{set_level}/{len(small)}"}}


# --- 7: homotopy classes ---------------------------------------------------------------------

def all_complexes(K, ranks, lo=0):
    """Every complex with the given ranks (finite field, brute force)."""
    shapes = [(ranks[i + 1], ranks[i]) for i in range(len(ranks) - 1)]
    choices = [list(itertools.product(K.elements(), repeat=r * c)) for r, c in shapes]
    for entries in itertools.product(*choices):
        mats = [Mat(K, [list(e[j * c:(j + 1) * c]) for j in range(r)], c) for e, (r, c) in zip(entries, shapes)]
        if all((mats[i + 1] @ mats[i]).is_zero() for i in range(len(mats) - 1)):
            yield ChainComplex.from_diffs(K, lo, ranks, mats)


def brute_force_class_count(A, B):
    """#chain maps / #null-homotopic maps, both counted by enumeration."""
    K = A.K
    degs = [i for i in range(min(A.lo, B.lo) - 1, max(A.hi, B.hi) + 2)]
    shapes0 = [(i, B.rank(i), A.rank(i)) for i in degs if B.rank(i) and A.rank(i)]
    shapes1 = [(i, B.rank(i - 1), A.rank(i)) for i in degs if B.rank(i - 1) and A.rank(i)]

    def maps(shapes):
        for entries in itertools.product(*[list(itertools.product(K.elements(), repeat=r * c))
                                           for _, r, c in shapes]):
            yield {i: Mat(K, [list(e[j * c:(j + 1) * c]) for j in range(r)], c)
                   for e, (i, r, c) in zip(entries, shapes)}

    def comp(f, i, r, c):
        return f.get(i, Mat.zeros(K, r, c))

    chain = 0
    for f in maps(shapes0):
        if all(comp(f, i + 1, B.rank(i + 1), A.rank(i + 1)) @ A.d(i) == B.d(i) @ comp(f, i, B.rank(i), A.rank(i))
               for i in degs):
            chain += 1
    null = set()
    for h in maps(shapes1):
        key = []
        for i in degs:
            m = B.d(i - 1) @ comp(h, i, B.rank(i - 1), A.rank(i)) + comp(h, i + 1, B.rank(i), A.rank(i + 1)) @ A.d(i)
            key.append(tuple(map(tuple, m.rows)))
        null.add(tuple(key))
    return chain // len(null), chain % len(null) == 0


def hom_classes_vs_enumeration(max_total=6, shifts=(-1, 0, 1), window=2):
    K = F(2)
    rank_vectors = [rv for rv in itertools.product(range(max_total + 1), repeat=window) if sum(rv) <= max_total]
    complexes = {rv: list(all_complexes(K, list(rv))) for rv in rank_vectors}
    pairs = agree = 0
    mismatches = []
    for ra in rank_vectors:
        for rb in rank_vectors:
            if sum(ra) + sum(rb) > max_total or not sum(ra) or not sum(rb):
                continue
            for A in complexes[ra]:
                for B0 in complexes[rb]:
                    for n in shifts:
                        B = shift(B0, n)
                        Hm = hom_complex(A, B)
                        r = homology(Hm, 0).rank if not Hm.is_empty and Hm.lo <= 0 <= Hm.hi else 0
                        count, exact = brute_force_class_count(A, B)
                        pairs += 1
                        if exact and count == 2 ** r:
                            agree += 1
                        elif len(mismatches) < 5:
                            mismatches.append([list(ra), list(rb), n])
    return {"criterion": 7, "name": "rank H^0 Hom(A, B[n]) matches enumerated homotopy classes",
            "pass": pairs == agree, "details": {"pairs_checked": pairs, "agreements": agree,
                                                "window": window, "max_total_rank": max_total,
                                                "mismatches": mismatches}}


# --- 8: chain invariants ------------------------------------------------------------------------

def _induced_rank(f, i):
    A, B = f.source, f.target
    if not B.rank(i):
        return 0
    cycles = kernel_basis(A.d(i)) if A.rank(i) else []
    imgs = [f(i).apply(z) for z in cycles]
    bnd = [tuple(c) for c in B.d(i - 1).columns()] if B.rank(i - 1) else []
    allv = bnd + [tuple(v) for v in imgs]
    if not allv:
        return 0
    return rank(Mat.from_columns(B.K, allv, B.rank(i))) - (rank(B.d(i - 1)) if bnd else 0)


def chain_invariants(count=100, seed=8):
    rng = random.Random(seed)
    fails = {"cone_id": 0, "shift": 0, "triple": 0, "les": 0}
    for t in range(count):
        K = [F(2), F(3), F(5), QQ][t % 4]
        A = random_complex(rng, K, 5)
        B = random_complex(rng, K, 5, lo=A.lo)
        if not is_acyclic(cone(ChainMap.identity(A))[0]):
            fails["cone_id"] += 1
        n = rng.randint(-2, 2)
        S = shift(A, n)
        if any(homology(S, i - n).rank != homology(A, i).rank for i in range(A.lo, A.hi + 1)):
            fails["shift"] += 1
        C, inc, proj = cone(random_chain_map(rng, B, A))
        try:
            if not is_acyclic(totalize_exact_triple(ExactTriple(A, C, shift(B, 1), inc, proj))):
                fails["triple"] += 1
        except ValueError:
            fails["triple"] += 1
        f = random_chain_map(rng, A, B)
        Cf = cone(f)[0]
        lo, hi = min(A.lo, B.lo) - 1, max(A.hi, B.hi) + 1

        def h(X, i):
            return homology(X, i).rank if not X.is_empty and X.lo <= i <= X.hi else 0

        for i in range(lo, hi + 1):
            lhs = h(Cf, i)
            rhs = (h(B, i) - _induced_rank(f, i)) + (h(A, i + 1) - _induced_rank(f, i + 1))
            if lhs != rhs:
                fails["les"] += 1
                break
    return {"criterion": 8, "name": "chain invariants on random complexes", "pass": not any(fails.values()),
            "details": {"complexes": count, "failures": fails}}


# --- 9: cubes -----------------------------------------------------------------------------------

def coherent_cubes(n_max=5):
    from .simplicial import coherent_hom, coherent_horn_hom, cube_nerve, find_isomorphism, fubini
    out = {}
    ok = True
    for n in range(2, n_max + 1):
        S = coherent_hom(n, 0, n)
        T = cube_nerve(n - 1)
        hint = {}
        for x in S.nondegenerate(0):
            (s,) = x
            hint[x] = (tuple(v for v in s if v not in (0, n)),)
        iso = find_isomorphism(S, T, hint)
        horn_info = {}
        for i in range(1, n):
            H = coherent_horn_hom(n, i)
            removed = set(S.labels()) - set(H.labels())
            full = tuple(range(n + 1))
            without = tuple(v for v in full if v != i)
            expected = {c for c in S.labels() if c[0] == (0, n) and c[-1] in (full, without)}
            horn_info[str(i)] = {"removed": len(removed), "expected_count": fubini(n - 1) + fubini(n - 2),
                                 "matches": removed == expected and len(removed) == fubini(n - 1) + fubini(n - 2)}
        out[str(n)] = {"f_vector": list(S.f_vector()), "isomorphism_found": iso is not None, "horns": horn_info}
        ok &= iso is not None and all(v["matches"] for v in horn_info.values())
    return {"criterion": 9, "name": "coherent realization homs are cube nerves", "pass": ok, "details": out}


# --- 10: semiorthogonality ------------------------------------------------------------------------

def semiorthogonality():
    from .derived import (check_certificate, is_degreewise_injective, is_degreewise_projective, linear_h0_rank,
                          reflect_via_triangle, split_reflection_witness)
    projectives = ["free-rank-one", "free-rank-one-up", "free-rank-one-down", "windowed-two-sided"]
    certified = []
    for cname in ("cert-contra-left-tail", "cert-co-right-tail"):
        cert = fx.load(cname)
        target = fx.load_document(cname)["target"]
        if cert.flavor == "contra" and check_certificate(cert, fx.load(target)).ok:
            certified.append(target)
    ranks = {}
    proj_ok = True
    for p in projectives:
        P = fx.load(p)
        proj_ok &= is_degreewise_projective(P)
        for a in certified:
            ranks[f"{p} -> {a}"] = linear_h0_rank(P, fx.load(a))
    X, E = fx.load("windowed-left-tail"), fx.load("free-rank-one")
    A, wit = split_reflection_witness(X, E)
    tests = [(n, fx.load(n)) for n in projectives]
    inj_ok = all(is_degreewise_injective(M) for _, M in tests)
    refl = reflect_via_triangle(A, wit, tests)
    ok = proj_ok and inj_ok and bool(certified) and not any(ranks.values()) and refl["verdict"]
    return {"criterion": 10, "name": "hom vanishing and reflection on the decomposition fixture", "pass": ok,
            "details": {"ranks": ranks, "reflection": {k: v for k, v in refl["results"].items()},
                        "scope": refl["scope"]}}


# --- 11: comodule/contramodule correspondence -------------------------------------------------------

def correspondence(v_max=3):
    from .comod import check_correspondence
    from .linalg import is_invertible
    out = {}
    ok = True
    for name in ("coalg-trivial", "coalg-dual-numbers", "coalg-a2", "coalg-kronecker"):
        C = fx.load(name)
        for v in range(1, v_max + 1):
            rep = check_correspondence(C, v)
            entry = {"ok": rep.ok, "comodule_method": rep.comodule_method,
                     "contramodule_method": rep.contramodule_method}
            if name == "coalg-trivial":
                I = Mat.identity(C.K, v)
                entry["identity_witnesses"] = rep.comodule_witness == I and rep.contramodule_witness == I
                ok &= entry["identity_witnesses"]
            ok &= rep.ok and is_invertible(rep.comodule_witness) and is_invertible(rep.contramodule_witness)
            out[f"{name}/v={v}"] = entry
    return {"criterion": 11, "name": "comodule/contramodule correspondence on free objects", "pass": ok,
            "details": out}


# --- 12: curved modules ------------------------------------------------------------------------------

def curved_cancellation():
    from .cdg import CurvedHomologyRefused, curvature_residual, as_dg_module, cdg_hom_complex, cdg_to_derived_kinds, square_of_d
    from .dgcat import LinearHom, validate_dg_category
    M, N = fx.load("cdg-mf"), fx.load("cdg-mf-swap")
    details = {}
    curv_nonzero = any(not square_of_d(M, i).is_zero() for i in range(M.space.lo, M.space.hi + 1))
    details["curvature_nonzero"] = curv_nonzero
    details["d2_equals_h"] = all(curvature_residual(X, i).is_zero() for X in (M, N)
                                 for i in range(X.space.lo - 1, X.space.hi + 1))
    sq = {}
    for a, b in ((M, M), (M, N), (N, M), (N, N)):
        H = cdg_hom_complex(a, b)
        sq[f"{a.name}->{b.name}"] = {"d2_zero": validate_complex(H).ok,
                                     "h0": homology(H, 0).rank if H.lo <= 0 <= H.hi else 0}
    details["hom_complexes"] = sq
    cat = cdg_to_derived_kinds([M, N])
    details["category_valid"] = not validate_dg_category(cat)
    U = fx.load("cdg-uncurved")
    D = as_dg_module(U)
    details["uncurved_agrees"] = cdg_hom_complex(U, U) == LinearHom(D, D).complex
    try:
        M.homology(0)
        details["homology_refused"] = False
    except CurvedHomologyRefused:
        details["homology_refused"] = True
    R1 = fx.load("cdg-rank-one-f2")
    E = cdg_hom_complex(R1, R1)
    details["rank_one_end_h0"] = homology(E, 0).rank
    ok = curv_nonzero and details["d2_equals_h"] and all(v["d2_zero"] for v in sq.values()) and details["category_valid"] and \
        details["uncurved_agrees"] and details["homology_refused"] and details["rank_one_end_h0"] >= 1
    return {"criterion": 12, "name": "curvature cancels in hom complexes", "pass": ok, "details": details}


CHECKS = {
    1: truncations_acyclic,
    2: certificates_and_mutations,
    4: dg_nerve_horns,
    5: nerve_h0_isomorphism,
    6: dold_kan_round_trips,
    7: hom_classes_vs_enumeration,
    8: chain_invariants,
    9: coherent_cubes,
    10: semiorthogonality,
    11: correspondence,
    12: curved_cancellation,
}
