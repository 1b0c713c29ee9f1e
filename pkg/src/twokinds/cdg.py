"""Curved DG-rings and curved modules.

A curved module has an operator of degree +1 with ``d² = h·``, so it is not a
complex and has no homology.  Its graded pieces are therefore stored in a
``GradedSpace``, which deliberately is not a ChainComplex.  Hom objects
between curved modules are genuine complexes; they are built with the same
linear-map machinery as in the uncurved case and checked for ``d² = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .chain import ChainComplex, ValidationReport, validate_complex
from .dgcat import (DGModulePresentation, GradedModuleMixin, GradedRingPresentation, LinearHom,
                    ModuleDGCategory, validate_dg_category)
from .linalg import Mat


class CDGError(ValueError):
    pass


class CurvedHomologyRefused(TypeError):
    """Raised when homology is requested for a curved module."""


class CurvatureCancellationError(ArithmeticError):
    """The hom differential of two curved modules failed to square to zero."""


@dataclass(frozen=True)
class GradedSpace:
    """Finite-rank graded vector space with a degree +1 operator (any square)."""
    K: object
    lo: int
    hi: int
    ranks: tuple
    ops: tuple   # ops[j]: V^{lo+j} -> V^{lo+j+1}

    @property
    def is_empty(self):
        return self.lo > self.hi

    def rank(self, i):
        return self.ranks[i - self.lo] if self.lo <= i <= self.hi else 0

    def d(self, i):
        if self.lo <= i < self.hi:
            return self.ops[i - self.lo]
        return Mat.zeros(self.K, self.rank(i + 1), self.rank(i))


@dataclass(frozen=True)
class CDGRing:
    B: GradedRingPresentation    # B.diff is the derivation (None means zero)
    h: tuple                      # curvature coordinates
    name: str = ""

    @property
    def K(self):
        return self.B.K


def validate_cdg_ring(C):
    B, K = C.B, C.K
    issues = list(B.underlying().validate())   # ring axioms without d² = 0
    h = C.h
    if len(h) != B.dim:
        return ValidationReport(tuple(issues + ["curvature has wrong length"]))
    if any(c and B.degrees[t] != 2 for t, c in enumerate(h)):
        issues.append("curvature is not of degree 2")
    if any(B.d(h)):
        issues.append("d(h) ≠ 0")
    for a in range(B.dim):
        x = B.e(a)
        dd = B.d(B.d(x))
        comm = tuple(K(p - q) for p, q in zip(B.mul(h, x), B.mul(x, h)))
        if dd != comm:
            issues.append(f"d² ≠ [h, -] on {B.basis_name(a)}")
    if B.diff is not None:
        for a in range(B.dim):
            for t, x in enumerate(B.diff.column(a)):
                if x and B.degrees[t] != B.degrees[a] + 1:
                    issues.append(f"d({B.basis_name(a)}) not of degree +1")
        for a, b in product(range(B.dim), repeat=2):
            lhs = B.d(B.mul(B.e(a), B.e(b)))
            s = (-1) ** B.degrees[a]
            r1 = B.mul(B.d(B.e(a)), B.e(b))
            r2 = B.mul(B.e(a), B.d(B.e(b)))
            if lhs != tuple(K(x + s * y) for x, y in zip(r1, r2)):
                issues.append(f"Leibniz fails on ({B.basis_name(a)}, {B.basis_name(b)})")
    return ValidationReport(tuple(issues))


@dataclass(frozen=True)
class CDGModule(GradedModuleMixin):
    cdg: CDGRing
    space: GradedSpace
    action: tuple    # action[a] = dict degree -> Mat
    name: str = ""

    @property
    def ring(self):
        return self.cdg.B

    @property
    def K(self):
        return self.space.K

    def homology(self, i=0):
        raise CurvedHomologyRefused("a curved module has d² = h·, so homology is undefined; "
                                    "take homology of a hom complex instead")

    def validate(self):
        return list(validate_cdg_module(self).issues)


def validate_cdg_module(M):
    issues = list(validate_cdg_ring(M.cdg).issues)
    S, R = M.space, M.ring
    for j, m in enumerate(S.ops):
        i = S.lo + j
        if m.shape != (S.rank(i + 1), S.rank(i)):
            issues.append(f"operator shape mismatch in degree {i}")
    if issues:
        return ValidationReport(tuple(issues))
    issues += M.action_issues()
    if issues:
        return ValidationReport(tuple(issues))
    h = M.cdg.h
    for i in range(S.lo - 1, S.hi + 1):
        res = S.d(i + 1) @ S.d(i) - M.act_element(h, i, 2)
        if not res.is_zero():
            issues.append(f"d² − h· ≠ 0 in degree {i}")
    for a in range(R.dim):
        da = R.degrees[a]
        dra = R.d(R.e(a))
        for i in range(S.lo - 1, S.hi + 1):
            lhs = S.d(i + da) @ M.act(a, i)
            rhs = M.act_element(dra, i, da + 1) + (M.act(a, i + 1) @ S.d(i)).scale((-1) ** da)
            if lhs != rhs:
                issues.append(f"Leibniz fails for {R.basis_name(a)} in degree {i}")
    return ValidationReport(tuple(issues))


def curvature_residual(M, i):
    """d²_M − h· in degree i (zero for a valid module)."""
    return M.space.d(i + 1) @ M.space.d(i) - M.act_element(M.cdg.h, i, 2)


def square_of_d(M, i):
    return M.space.d(i + 1) @ M.space.d(i)


def free_cdg_module(C, gen_degrees, dgens, name=""):
    """Free module on generators g_j of the given degrees.

    ``dgens[j]`` lists ``(k, ring element)`` pairs giving d(g_j) = sum r g_k;
    d extends by d(b g) = d(b) g + (-1)^{|b|} b d(g).
    """
    B, K = C.B, C.K
    cells = sorted(((B.degrees[a] + gen_degrees[j], j, a) for j in range(len(gen_degrees))
                    for a in range(B.dim)))
    if not cells:
        return CDGModule(C, GradedSpace(K, 0, -1, (), ()), tuple({} for _ in range(B.dim)), name)
    lo, hi = cells[0][0], cells[-1][0]
    index = {}
    by_deg = {n: [] for n in range(lo, hi + 1)}
    for n, j, a in cells:
        index[(j, a)] = (n, len(by_deg[n]))
        by_deg[n].append((j, a))
    ranks = tuple(len(by_deg[n]) for n in range(lo, hi + 1))

    def element(vec_by_gen):
        """Map {(j, a): coeff} into per-degree coordinate dicts."""
        out = {}
        for (j, a), c in vec_by_gen.items():
            if c:
                n, pos = index[(j, a)]
                out.setdefault(n, [K(0)] * ranks[n - lo])
                out[n][pos] = K(out[n][pos] + c)
        return out

    def times(u, j):
        return {(j, t): x for t, x in enumerate(u) if x}

    def add(x, y, s=1):
        out = dict(x)
        for k, v in y.items():
            out[k] = K(out.get(k, 0) + s * v)
        return out

    ops = []
    for n in range(lo, hi):
        cols = []
        for j, a in by_deg[n]:
            val = times(B.d(B.e(a)), j)
            for k, r in dgens[j]:
                val = add(val, times(B.mul(B.e(a), r), k), (-1) ** B.degrees[a])
            coords = element(val)
            if any(m != n + 1 for m in coords):
                raise CDGError("d of a generator has the wrong degree")
            cols.append(tuple(coords.get(n + 1, [K(0)] * ranks[n + 1 - lo])))
        ops.append(Mat.from_columns(K, cols, ranks[n + 1 - lo]))
    acts = []
    for b in range(B.dim):
        db = B.degrees[b]
        d = {}
        for n in range(lo, hi + 1):
            if n + db > hi or not ranks[n - lo]:
                continue
            cols = []
            for j, a in by_deg[n]:
                coords = element(times(B.mul(B.e(b), B.e(a)), j))
                cols.append(tuple(coords.get(n + db, [K(0)] * ranks[n + db - lo])))
            if ranks[n + db - lo]:
                d[n] = Mat.from_columns(K, cols, ranks[n + db - lo])
        acts.append(d)
    return CDGModule(C, GradedSpace(K, lo, hi, ranks, tuple(ops)), tuple(acts), name)


def cdg_hom_complex(M, N):
    """Complex of graded B-linear maps M -> N with d f = d_N f − (−1)^{|f|} f d_M.

    Raises CurvatureCancellationError unless d² = 0 holds exactly.
    """
    if M.cdg != N.cdg:
        raise CDGError("modules over different curved rings")
    L = LinearHom(M, N, require_square_zero=False)
    rep = validate_complex(L.complex)
    if not rep.ok:
        raise CurvatureCancellationError(str(rep))
    return L.complex


def as_dg_module(M):
    """The same data as an uncurved DG-module (needs h = 0)."""
    if any(M.cdg.h):
        raise CDGError("curvature is nonzero")
    S = M.space
    C = ChainComplex(S.K, S.lo, S.hi, S.ranks, S.ops)
    return DGModulePresentation(M.ring, C, M.action, M.name)


def cdg_to_derived_kinds(modules, names=None, name=""):
    """Package curved modules into a validated DG-category of B-linear maps."""
    if not modules:
        raise CDGError("need at least one module")
    C = modules[0].cdg
    if any(M.cdg != C for M in modules):
        raise CDGError("modules over different curved rings")
    A = ModuleDGCategory(C.B, modules, names, name=name)
    issues = validate_dg_category(A)
    if issues:
        raise CDGError(f"packaged category invalid: {issues[0]}")
    return A


# --- fixture rings ------------------------------------------------------------------------

def _ring(K, degrees, table, names):
    n = len(degrees)
    mult = tuple(tuple(tuple(K(x) for x in table(a, b)) for b in range(n)) for a in range(n))
    return GradedRingPresentation(K, tuple(degrees), mult, tuple(K(int(i == 0)) for i in range(n)), None,
                                  tuple(names))


def truncated_polynomial(K, top, deg=1):
    """k[u]/(u^top) with deg u = deg; basis 1, u, ..., u^{top-1}."""
    def table(a, b):
        return [int(a + b == t) for t in range(top)]
    return _ring(K, [deg * i for i in range(top)], table, ["1"] + [f"u^{i}" if i > 1 else "u" for i in range(1, top)])


def exterior_like(K):
    """k[u, v]/(u², v²) commutative with deg u = deg v = 1; basis 1, u, v, uv."""
    prods = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 0): 1, (2, 0): 2, (3, 0): 3,
             (1, 2): 3, (2, 1): 3}

    def table(a, b):
        t = prods.get((a, b))
        return [int(t == i) for i in range(4)]
    return _ring(K, [0, 1, 1, 2], table, ["1", "u", "v", "uv"])


def rank_one_curved(K):
    """B = k[u]/(u³), h = −u², M = B with d(g) = u g."""
    B = truncated_polynomial(K, 3)
    C = CDGRing(B, (K(0), K(0), K(-1)), "k[u]/u³, h=-u²")
    return free_cdg_module(C, [0], [[(0, B.e(1))]], "M1")


def matrix_factorization_pair(K):
    """Over k[u,v]/(u²,v²) with h = −uv: d g0 = u g1, d g1 = v g0 and the swap."""
    B = exterior_like(K)
    C = CDGRing(B, (K(0), K(0), K(0), K(-1)), "k[u,v]/(u²,v²), h=-uv")
    u, v = B.e(1), B.e(2)
    M = free_cdg_module(C, [0, 0], [[(1, u)], [(0, v)]], "MF")
    N = free_cdg_module(C, [0, 0], [[(1, v)], [(0, u)]], "MF'")
    return M, N


def uncurved_rank_one(K):
    """B = k[u]/(u²), h = 0, M = B with d(g) = u g; d² = 0."""
    B = truncated_polynomial(K, 2)
    C = CDGRing(B, (K(0), K(0)), "k[u]/u², h=0")
    return free_cdg_module(C, [0], [[(0, B.e(1))]], "M0")
