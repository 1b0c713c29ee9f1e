"""Finite-dimensional coalgebras, comodules and contramodules.

Index conventions (n = dim C):

* ``e_i ⊗ e_j`` in C⊗C has index ``i*n + j``; the same rule is used for C⊗N
  and N⊗C;
* a vector of Hom(C, P) has entry ``i*p + j`` equal to ``phi(e_i)_j``;
* Hom(C, Hom(C, P)) ≅ Hom(C⊗C, P) by ``chi(c1 ⊗ c2) = psi(c2)(c1)``.

Contraaction on the free contramodule Hom(C, V) and on Hom_C(C, N):
``alpha(psi)(c) = sum psi(c_(2))(c_(1))``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import (Mat, image_basis, is_invertible, kernel_basis, kron, rank, solve)


class ComodError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomReport:
    residuals: tuple  # (axiom name, residual Mat)

    @property
    def ok(self):
        return all(m.is_zero() for _, m in self.residuals)

    @property
    def issues(self):
        return tuple(name for name, m in self.residuals if not m.is_zero())

    def __bool__(self):
        return self.ok


def _I(K, n):
    return Mat.identity(K, n)


@dataclass(frozen=True)
class Coalgebra:
    K: object
    dim: int
    delta: Mat      # n² x n
    counit: Mat     # 1 x n
    degrees: tuple = ()
    differential: object = None
    name: str = ""

    def deg(self, i):
        return self.degrees[i] if self.degrees else 0

    def comult(self, c):
        return self.delta.apply(c)


def validate_coalgebra(C):
    K, n = C.K, C.dim
    if C.delta.shape != (n * n, n) or C.counit.shape != (1, n):
        raise ComodError("coalgebra structure maps have wrong shapes")
    I = _I(K, n)
    res = [
        ("coassociativity", kron(C.delta, I) @ C.delta - kron(I, C.delta) @ C.delta),
        ("left counit", kron(C.counit, I) @ C.delta - I),
        ("right counit", kron(I, C.counit) @ C.delta - I),
    ]
    if C.differential is not None:
        d = C.differential
        res.append(("d²", d @ d))
        signs = Mat(K, [[(-1) ** C.deg(i) if i == j else 0 for j in range(n)] for i in range(n)])
        res.append(("coderivation", C.delta @ d - (kron(d, I) + kron(signs, d)) @ C.delta))
    return AxiomReport(tuple(res))


@dataclass(frozen=True)
class LeftComodule:
    C: Coalgebra
    dim: int
    coaction: Mat   # (n*m) x m, N -> C⊗N
    differential: object = None
    name: str = ""


@dataclass(frozen=True)
class RightComodule:
    C: Coalgebra
    dim: int
    coaction: Mat   # (m*n) x m, N -> N⊗C
    name: str = ""


@dataclass(frozen=True)
class LeftContramodule:
    C: Coalgebra
    dim: int
    contraaction: Mat   # p x (n*p), Hom(C, P) -> P
    name: str = ""


def validate_comodule(N):
    C, K, n, m = N.C, N.C.K, N.C.dim, N.dim
    eta = N.coaction
    if isinstance(N, LeftComodule):
        if eta.shape != (n * m, m):
            raise ComodError("coaction has the wrong shape")
        res = [("coassociativity square", kron(C.delta, _I(K, m)) @ eta - kron(_I(K, n), eta) @ eta),
               ("counit triangle", kron(C.counit, _I(K, m)) @ eta - _I(K, m))]
        if N.differential is not None:
            d = N.differential
            res.append(("d²", d @ d))
            res.append(("coaction commutes with d", eta @ d - kron(_I(K, n), d) @ eta))
    else:
        if eta.shape != (m * n, m):
            raise ComodError("coaction has the wrong shape")
        res = [("coassociativity square", kron(eta, _I(K, n)) @ eta - kron(_I(K, m), C.delta) @ eta),
               ("counit triangle", kron(_I(K, m), C.counit) @ eta - _I(K, m))]
    return AxiomReport(tuple(res))


def _rearrange(C, p):
    """Hom(C, Hom(C, P)) -> Hom(C, P), psi -> (c -> sum psi(c_(2))(c_(1)))."""
    K, n = C.K, C.dim
    rows = [[K(0)] * (n * n * p) for _ in range(n * p)]
    for c in range(n):
        col = C.delta.column(c)
        for c1 in range(n):
            for c2 in range(n):
                x = col[c1 * n + c2]
                if x:
                    for j in range(p):
                        r, s = c * p + j, c2 * (n * p) + c1 * p + j
                        rows[r][s] = K(rows[r][s] + x)
    return Mat(K, rows, n * n * p)


def _counit_embed(C, p):
    """P -> Hom(C, P), p -> (c -> eps(c) p)."""
    return kron(C.counit.T, _I(C.K, p))


def validate_contramodule(P):
    C, K, n, p = P.C, P.C.K, P.C.dim, P.dim
    a = P.contraaction
    if a.shape != (p, n * p):
        raise ComodError("contraaction has the wrong shape")
    res = [("contraassociativity square", a @ kron(_I(K, n), a) - a @ _rearrange(C, p)),
           ("unit triangle", a @ _counit_embed(C, p) - _I(K, p))]
    return AxiomReport(tuple(res))


# --- standard objects ------------------------------------------------------------------

def cofree_comodule(C, v):
    """C ⊗ V with coaction Δ ⊗ id."""
    return LeftComodule(C, C.dim * v, kron(C.delta, _I(C.K, v)), name=f"C⊗k^{v}")


def coalgebra_as_right_comodule(C):
    return RightComodule(C, C.dim, C.delta, name="C")


def coalgebra_as_left_comodule(C):
    return LeftComodule(C, C.dim, C.delta, name="C")


def free_contramodule(C, v):
    """Hom(C, V) with alpha(psi)(c) = sum psi(c_(2))(c_(1))."""
    return LeftContramodule(C, C.dim * v, _rearrange(C, v), name=f"Hom(C,k^{v})")


def zero_comodule(C):
    return LeftComodule(C, 0, Mat.zeros(C.K, 0, 0))


def zero_contramodule(C):
    return LeftContramodule(C, 0, Mat.zeros(C.K, 0, 0))


# --- contratensor ------------------------------------------------------------------------

@dataclass(frozen=True)
class Quotient:
    """V / W with a complement of standard basis vectors and the projection."""
    ambient: int
    dim: int
    lift: tuple          # indices of the standard vectors spanning the complement
    projection: Mat      # dim x ambient


def quotient(K, ambient, relations):
    W = [tuple(v) for v in relations if any(v)]
    basis = image_basis(Mat.from_columns(K, W, ambient)) if W else []
    chosen = list(basis)
    lift = []
    for k in range(ambient):
        e = tuple(K(int(i == k)) for i in range(ambient))
        if rank(Mat.from_columns(K, chosen + [e], ambient)) == len(chosen) + 1:
            chosen.append(e)
            lift.append(k)
    M = Mat.from_columns(K, chosen, ambient) if chosen else Mat.zeros(K, ambient, 0)
    cols = []
    for k in range(ambient):
        e = tuple(K(int(i == k)) for i in range(ambient))
        x = solve(M, e)
        cols.append(x[len(basis):])
    proj = Mat.from_columns(K, cols, len(lift)) if ambient else Mat.zeros(K, 0, 0)
    return Quotient(ambient, len(lift), tuple(lift), proj)


def contratensor_relations(N, P):
    """map1 - map2 : N ⊗ Hom(C, P) -> N ⊗ P as a matrix."""
    K, n, m, p = N.C.K, N.C.dim, N.dim, P.dim
    map1 = kron(_I(K, m), P.contraaction)
    rows = [[K(0)] * (m * n * p) for _ in range(m * p)]
    for a in range(m):
        col = N.coaction.column(a)  # eta(e_a) in N ⊗ C
        for a0 in range(m):
            for c in range(n):
                x = col[a0 * n + c]
                if x:
                    for j in range(p):
                        r, s = a0 * p + j, a * (n * p) + c * p + j
                        rows[r][s] = K(rows[r][s] + x)
    map2 = Mat(K, rows, m * n * p)
    return map1 - map2


def contratensor(N, P):
    if N.C != P.C:
        raise ComodError("comodule and contramodule over different coalgebras")
    K = N.C.K
    D = contratensor_relations(N, P)
    return quotient(K, N.dim * P.dim, D.columns())


# --- Psi and Phi -----------------------------------------------------------------------------

def comodule_hom_condition(C, N):
    """Linear condition on g in Hom(C, N) for being a comodule map C -> N."""
    K, n, m = C.K, C.dim, N.dim
    cols = []
    for t in range(n * m):
        g = Mat(K, [[int(t == c * m + a) for c in range(n)] for a in range(m)], n) if m else None
        lhs = N.coaction @ g
        rhs = kron(_I(K, n), g) @ C.delta
        cols.append(tuple(x for row in (lhs - rhs).rows for x in row))
    return Mat.from_columns(K, cols, n * m * n) if cols else Mat.zeros(K, 0, 0)


def _hom_to_matrix(K, n, m, vec):
    return Mat(K, [[vec[c * m + a] for c in range(n)] for a in range(m)], n)


@dataclass(frozen=True)
class PsiResult:
    contramodule: LeftContramodule
    inclusion: Mat   # (n*m) x r, basis of Hom_C(C, N) inside Hom(C, N)


def psi(N):
    C, K, n, m = N.C, N.C.K, N.C.dim, N.dim
    if m == 0:
        return PsiResult(zero_contramodule(C), Mat.zeros(K, 0, 0))
    basis = kernel_basis(comodule_hom_condition(C, N))
    r = len(basis)
    B = Mat.from_columns(K, basis, n * m) if basis else Mat.zeros(K, n * m, 0)
    big = _rearrange(C, m) @ kron(_I(K, n), B)   # Hom(C, Psi) -> Hom(C, N)
    cols = []
    for v in big.columns():
        x = solve(B, v) if r else ()
        if x is None:
            raise ComodError("contraaction leaves Hom_C(C, N)")
        cols.append(x)
    alpha = Mat.from_columns(K, cols, r) if r else Mat.zeros(K, 0, n * r)
    return PsiResult(LeftContramodule(C, r, alpha, name="Psi"), B)


@dataclass(frozen=True)
class PhiResult:
    comodule: LeftComodule
    quotient: Quotient


def phi(P):
    C, K, n, p = P.C, P.C.K, P.C.dim, P.dim
    Q = contratensor(coalgebra_as_right_comodule(C), P)
    if Q.dim == 0:
        return PhiResult(zero_comodule(C), Q)
    lifted = kron(C.delta, _I(K, p))    # C⊗P -> C⊗C⊗P
    push = kron(_I(K, n), Q.projection) @ lifted   # C⊗P -> C⊗Q
    D = contratensor_relations(coalgebra_as_right_comodule(C), P)
    if not (push @ D).is_zero():
        raise ComodError("coaction does not descend to the contratensor product")
    cols = [push.column(k) for k in Q.lift]
    eta = Mat.from_columns(K, cols, n * Q.dim)
    return PhiResult(LeftComodule(C, Q.dim, eta, name="Phi"), Q)


# --- morphisms -------------------------------------------------------------------------------

def comodule_map_residual(N, N2, f):
    C = N.C
    return N2.coaction @ f - kron(_I(C.K, C.dim), f) @ N.coaction


def contramodule_map_residual(P, P2, f):
    C = P.C
    return f @ P.contraaction - P2.contraaction @ kron(_I(C.K, C.dim), f)


def _intertwiners(K, src, tgt, residual):
    cols = []
    for t in range(src * tgt):
        f = Mat(K, [[int(t == a * src + b) for b in range(src)] for a in range(tgt)], src)
        r = residual(f)
        cols.append(tuple(x for row in r.rows for x in row))
    if not cols:
        return []
    nrows = len(cols[0])
    if nrows == 0:
        return [tuple(K(int(i == t)) for i in range(src * tgt)) for t in range(src * tgt)]
    return kernel_basis(Mat.from_columns(K, cols, nrows))


def find_invertible_intertwiner(K, src, tgt, residual, seed=0, tries=400):
    """An invertible f with residual(f) = 0, searched in the solution space."""
    if src != tgt:
        return None
    if src == 0:
        return Mat.zeros(K, 0, 0)
    basis = _intertwiners(K, src, tgt, residual)
    if not basis:
        return None

    def build(coeffs):
        v = [K(0)] * (src * tgt)
        for c, b in zip(coeffs, basis):
            if c:
                v = [K(x + c * y) for x, y in zip(v, b)]
        return Mat(K, [v[a * src:(a + 1) * src] for a in range(tgt)], src)

    rng = random.Random(seed)
    for t in range(tries):
        if t < len(basis):
            coeffs = [int(i == t) for i in range(len(basis))]
        else:
            coeffs = [rng.randrange(K.p) if K.is_finite else rng.randrange(-3, 4) for _ in basis]
        f = build(coeffs)
        if is_invertible(f):
            return f
    return None


@dataclass
class CorrespondenceReport:
    coalgebra: str
    v: int
    comodule_dims: tuple = ()
    contramodule_dims: tuple = ()
    comodule_witness: object = None
    contramodule_witness: object = None
    comodule_method: str = ""
    contramodule_method: str = ""

    @property
    def ok(self):
        return self.comodule_witness is not None and self.contramodule_witness is not None


def _evaluation_witness(N, ps, ph):
    """C ⊙ Hom_C(C, N) -> N, [c ⊗ g] -> g(c); None if it is not an iso of comodules."""
    C, K, n, m = N.C, N.C.K, N.C.dim, N.dim
    r = ps.contramodule.dim
    rows = [[K(0)] * (n * r) for _ in range(m)]
    for c in range(n):
        for b in range(r):
            g = ps.inclusion.column(b)
            for a in range(m):
                rows[a][c * r + b] = g[c * m + a]
    ev = Mat(K, rows, n * r)
    D = contratensor_relations(coalgebra_as_right_comodule(C), ps.contramodule)
    if not (ev @ D).is_zero():
        return None
    Q = ph.quotient
    f = Mat.from_columns(K, [ev.column(k) for k in Q.lift], m) if Q.dim else Mat.zeros(K, m, 0)
    if not is_invertible(f) or not comodule_map_residual(ph.comodule, N, f).is_zero():
        return None
    return f


def _unit_witness(P, ph, ps):
    """P -> Hom_C(C, C ⊙ P), p -> (c -> [c ⊗ p]); None unless a contramodule iso."""
    K, n, p = P.C.K, P.C.dim, P.dim
    Q = ph.quotient
    cols = []
    for j in range(p):
        vec = []
        for c in range(n):
            vec.extend(Q.projection.column(c * p + j))
        x = solve(ps.inclusion, tuple(vec)) if ps.contramodule.dim else None
        if x is None:
            return None
        cols.append(x)
    f = Mat.from_columns(K, cols, ps.contramodule.dim)
    if not is_invertible(f) or not contramodule_map_residual(P, ps.contramodule, f).is_zero():
        return None
    return f


def check_correspondence(C, v, seed=0):
    """Witnesses Φ(Ψ(C⊗V)) ≅ C⊗V and Ψ(Φ(Hom(C,V))) ≅ Hom(C,V)."""
    K = C.K
    rep = CorrespondenceReport(C.name, v)
    N = cofree_comodule(C, v)
    ps = psi(N)
    ph = phi(ps.contramodule)
    rep.comodule_dims = (ph.comodule.dim, N.dim)
    f = _evaluation_witness(N, ps, ph)
    rep.comodule_method = "evaluation"
    if f is None:
        rep.comodule_method = "search"
        f = find_invertible_intertwiner(K, ph.comodule.dim, N.dim,
                                        lambda g: comodule_map_residual(ph.comodule, N, g), seed)
    rep.comodule_witness = f
    P = free_contramodule(C, v)
    ph2 = phi(P)
    ps2 = psi(ph2.comodule)
    rep.contramodule_dims = (ps2.contramodule.dim, P.dim)
    g = _unit_witness(P, ph2, ps2)
    rep.contramodule_method = "unit"
    if g is None:
        rep.contramodule_method = "search"
        g = find_invertible_intertwiner(K, P.dim, ps2.contramodule.dim,
                                        lambda h: contramodule_map_residual(P, ps2.contramodule, h), seed)
    rep.contramodule_witness = g
    return rep


def psi_of_map(N, N2, g):
    """Ψ(g): Hom_C(C, N) -> Hom_C(C, N2) by postcomposition."""
    C, K = N.C, N.C.K
    a, b = psi(N), psi(N2)
    big = kron(_I(K, C.dim), g) @ a.inclusion
    cols = []
    for v in big.columns():
        x = solve(b.inclusion, v) if b.contramodule.dim else ()
        if x is None:
            raise ComodError("postcomposition leaves Hom_C(C, N2)")
        cols.append(x)
    f = Mat.from_columns(K, cols, b.contramodule.dim) if cols else Mat.zeros(K, b.contramodule.dim, 0)
    return a.contramodule, b.contramodule, f


# --- fixture coalgebras -------------------------------------------------------------------

def _coalgebra_from_table(K, n, table, counit, name):
    cols = []
    for c in range(n):
        v = [K(0)] * (n * n)
        for (i, j), x in table.get(c, {}).items():
            v[i * n + j] = K(v[i * n + j] + x)
        cols.append(tuple(v))
    return Coalgebra(K, n, Mat.from_columns(K, cols, n * n), Mat(K, [counit], n), name=name)


def trivial_coalgebra(K):
    return _coalgebra_from_table(K, 1, {0: {(0, 0): 1}}, [1], "k")


def dual_numbers_coalgebra(K):
    """Dual of k[x]/(x²): basis (1*, x*)."""
    return _coalgebra_from_table(K, 2, {0: {(0, 0): 1}, 1: {(1, 0): 1, (0, 1): 1}}, [1, 0], "(k[x]/x²)*")


def path_coalgebra(K, vertices, arrows, name="path"):
    """Path coalgebra of a quiver without paths of length 2.

    Basis: vertices then arrows; Δ(e) = e⊗e, Δ(a) = e_s⊗a + a⊗e_t.
    """
    nv = len(vertices)
    n = nv + len(arrows)
    table = {i: {(i, i): 1} for i in range(nv)}
    for k, (s, t) in enumerate(arrows):
        a = nv + k
        table[a] = {(vertices.index(s), a): 1, (a, vertices.index(t)): 1}
    return _coalgebra_from_table(K, n, table, [1] * nv + [0] * len(arrows), name)


def a2_coalgebra(K):
    return path_coalgebra(K, ["1", "2"], [("1", "2")], "A2")


def kronecker_coalgebra(K):
    return path_coalgebra(K, ["1", "2"], [("1", "2"), ("1", "2")], "Kronecker")
