"""Dold-Kan: truncation to nonnegative complexes, the functor Gamma to
simplicial modules, normalization back, and the underlying simplicial set.

Homological degree k corresponds to cohomological degree -k, so a
nonnegative complex lives in cohomological degrees <= 0 and its boundary
``C_k -> C_{k-1}`` is the matrix ``d(-k)``.

Gamma(C)_n is the sum over order-preserving surjections s: [n] -> [k] of
copies of C_k.  A monotone map t: [m] -> [n] sends the (s, c) summand by
factoring s∘t = e∘u with u surjective and e injective: to (u, c) if e is the
identity, to (u, ∂c) if e is the coface omitting 0, and to zero otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass

from .chain import ChainComplex, ChainError, ChainMap, require_valid
from .linalg import Mat, kernel_basis, solve, vector_space, vstack
from .simplicial import (FiniteSimplicialSet, codegeneracy, coface, ident, surjections)


class DoldKanError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialAbelianGroup:
    """Free modules per dimension with face and degeneracy matrices.

    ``faces[n][i]``: G_n -> G_{n-1} (n >= 1); ``degeneracies[n][i]``:
    G_n -> G_{n+1} (n < cap).  ``basis[n]`` lists the labels (surjection,
    index into C_k) of the Gamma construction when available.
    """
    K: object
    cap: int
    ranks: tuple
    faces: tuple
    degeneracies: tuple
    basis: tuple = ()

    def face(self, n, i):
        return self.faces[n][i]

    def degeneracy(self, n, i):
        return self.degeneracies[n][i]

    def pullback(self, theta, n):
        """Matrix of theta^*: G_n -> G_m for monotone theta: [m] -> [n]."""
        theta = tuple(theta)
        image = sorted(set(theta))
        # injective part: drop missing vertices, highest first
        M = Mat.identity(self.K, self.ranks[n])
        cur = n
        for j in sorted(set(range(n + 1)) - set(image), reverse=True):
            M = self.faces[cur][j] @ M
            cur -= 1
        pos = {v: i for i, v in enumerate(image)}
        eps = tuple(pos[t] for t in theta)
        return self._surj_pullback(eps) @ M

    def _surj_pullback(self, eps):
        k = eps[-1]
        if len(eps) == k + 1:
            return Mat.identity(self.K, self.ranks[k])
        t = next(a for a in range(len(eps) - 1) if eps[a] == eps[a + 1])
        rest = eps[:t + 1] + eps[t + 2:]
        return self.degeneracies[len(rest) - 1][t] @ self._surj_pullback(rest)


def validate_sag(G):
    """Simplicial identities as matrix equations."""
    issues = []
    D = G.cap
    for n in range(D + 1):
        if n >= 1 and len(G.faces[n]) != n + 1:
            issues.append(f"dimension {n}: expected {n + 1} faces")
        if n < D and len(G.degeneracies[n]) != n + 1:
            issues.append(f"dimension {n}: expected {n + 1} degeneracies")
    if issues:
        return issues
    d, s = G.faces, G.degeneracies
    for n in range(2, D + 1):
        for j in range(n + 1):
            for i in range(j):
                if d[n - 1][i] @ d[n][j] != d[n - 1][j - 1] @ d[n][i]:
                    issues.append(f"d_{i} d_{j} = d_{j - 1} d_{i} fails in dimension {n}")
    for n in range(D):
        I = Mat.identity(G.K, G.ranks[n])
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d[n + 1][i] @ s[n][j]
                if i < j:
                    rhs = s[n - 1][j - 1] @ d[n][i]
                elif i in (j, j + 1):
                    rhs = I
                else:
                    rhs = s[n - 1][j] @ d[n][i - 1]
                if lhs != rhs:
                    issues.append(f"d_{i} s_{j} identity fails in dimension {n}")
    for n in range(D - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if s[n + 1][i] @ s[n][j] != s[n + 1][j + 1] @ s[n][i]:
                    issues.append(f"s_{i} s_{j} = s_{j + 1} s_{i} fails in dimension {n}")
    return issues


def _bounded_nonneg(C):
    if not C.is_bounded:
        raise DoldKanError("Dold-Kan needs a bounded complex")
    if not C.is_empty and C.hi > 0:
        if any(C.rank(i) for i in range(1, C.hi + 1)):
            raise DoldKanError("complex has negative homological degrees; truncate first")


def truncate_nonneg(C):
    """Keep homological degrees >= 0, replacing C_0 by the cycles ker(d(0))."""
    if not C.is_bounded:
        raise DoldKanError("truncation needs a bounded complex")
    K = C.K
    if C.is_empty or C.lo > 0:
        return ChainComplex.zero(K)
    Z = kernel_basis(C.d(0))
    r0 = len(Z)
    lo = C.lo
    ranks = [C.rank(i) for i in range(lo, 0)] + [r0]
    diffs = [C.d(i) for i in range(lo, -1)]
    if lo < 0:
        zmat = Mat.from_columns(K, Z, C.rank(0))
        top = C.d(-1)
        cols = []
        for v in top.columns():
            x = solve(zmat, v)
            if x is None:
                raise ChainError("boundary not contained in cycles")
            cols.append(x)
        diffs.append(Mat.from_columns(K, cols, r0))
    return require_valid(ChainComplex(K, lo, 0, tuple(ranks), tuple(diffs)))


def truncation_inclusion(C):
    """The chain map truncate_nonneg(C) -> C."""
    T = truncate_nonneg(C)
    comps = {i: Mat.identity(C.K, C.rank(i)) for i in range(T.lo, 0)} if not T.is_empty else {}
    if not T.is_empty:
        comps[0] = Mat.from_columns(C.K, kernel_basis(C.d(0)), C.rank(0))
    return ChainMap.make(T, C, comps)


def _homological(C):
    """Ranks and boundary matrices indexed homologically."""
    if C.is_empty:
        return [], {}
    top = -C.lo
    ranks = [C.rank(-k) for k in range(top + 1)]
    bd = {k: C.d(-k) for k in range(1, top + 1)}
    return ranks, bd


def gamma(C, cap=3):
    _bounded_nonneg(C)
    K = C.K
    ranks_h, bd = _homological(C)

    def rk(k):
        return ranks_h[k] if k < len(ranks_h) else 0

    basis = []
    for n in range(cap + 1):
        b = []
        for k in range(n + 1):
            for s in surjections(n, k):
                b.extend((s, j) for j in range(rk(k)))
        basis.append(tuple(b))
    index = [{lab: i for i, lab in enumerate(b)} for b in basis]

    def op(theta, n):
        m = len(theta) - 1
        rows = [[K(0)] * len(basis[n]) for _ in range(len(basis[m]))]
        for col, (s, j) in enumerate(basis[n]):
            k = s[-1]
            comp = tuple(s[t] for t in theta)
            image = sorted(set(comp))
            pos = {v: i for i, v in enumerate(image)}
            u = tuple(pos[c] for c in comp)
            if len(image) == k + 1:
                rows[index[m][(u, j)]][col] = K(1)
            elif image == list(range(1, k + 1)):
                dcol = bd[k].column(j)
                for jj, val in enumerate(dcol):
                    if val:
                        r = index[m][(u, jj)]
                        rows[r][col] = K(rows[r][col] + val)
        return Mat(K, rows, len(basis[n]))

    faces = [()] + [tuple(op(coface(n, i), n) for i in range(n + 1)) for n in range(1, cap + 1)]
    degs = [tuple(op(codegeneracy(n, i), n) for i in range(n + 1)) for n in range(cap)] + [()]
    return SimplicialAbelianGroup(K, cap, tuple(len(b) for b in basis), tuple(faces), tuple(degs),
                                  tuple(basis))


def normalize(G):
    """Normalized complex: ∩_{i>=1} ker d_i in each dimension, differential d_0."""
    K = G.K
    kers = []
    for n in range(G.cap + 1):
        if n == 0:
            kers.append([tuple(K(int(i == j)) for i in range(G.ranks[0])) for j in range(G.ranks[0])])
            continue
        stacked = vstack([G.faces[n][i] for i in range(1, n + 1)], K=K, ncols=G.ranks[n])
        kers.append(kernel_basis(stacked))
    ranks = [len(b) for b in kers]
    diffs = {}
    for n in range(1, G.cap + 1):
        target = Mat.from_columns(K, kers[n - 1], G.ranks[n - 1])
        cols = []
        for v in kers[n]:
            x = solve(target, G.faces[n][0].apply(v))
            if x is None:
                raise DoldKanError("d_0 leaves the normalized part")
            cols.append(x)
        diffs[n] = Mat.from_columns(K, cols, ranks[n - 1])
    top = G.cap
    while top > 0 and ranks[top] == 0:
        top -= 1
    if top == 0 and ranks[0] == 0:
        return ChainComplex.zero(K)
    # cohomological degree -n holds N_n
    return require_valid(ChainComplex(K, -top, 0, tuple(ranks[n] for n in range(top, -1, -1)),
                                      tuple(diffs[n] for n in range(top, 0, -1))))


def surjection_count(n, k):
    """#order-preserving surjections [n] -> [k] = C(n, k), counted directly."""
    from itertools import product
    return sum(1 for f in product(range(k + 1), repeat=n + 1)
               if list(f) == sorted(f) and set(f) == set(range(k + 1)))


def underlying_simplicial_set(G, cap=None, budget=20000):
    """Elements as simplices; only for finite coefficient fields."""
    if not G.K.is_finite:
        raise DoldKanError("element enumeration needs a finite field")
    cap = G.cap if cap is None else cap
    if cap > 3 or cap > G.cap:
        raise DoldKanError("dimension cap too large")
    total = sum(G.K.p ** r for r in G.ranks[:cap + 1])
    if total > budget:
        raise DoldKanError(f"{total} simplices exceed the budget {budget}")
    normal = []
    cells = []
    faces = {}
    for n in range(cap + 1):
        table = {}
        if n:
            for i in range(n):
                s = G.degeneracies[n - 1][i]
                for w, (x, tau) in normal[n - 1].items():
                    v = s.apply(w)
                    if v not in table:
                        table[v] = (x, tuple(tau[a] for a in codegeneracy(n - 1, i)))
        layer = []
        for v in vector_space(G.K, G.ranks[n]):
            if v not in table:
                label = (n, v)
                table[v] = (label, ident(n))
                layer.append(label)
        normal.append(table)
        cells.append(layer)
        if n:
            for label in layer:
                v = label[1]
                faces[label] = tuple(normal[n - 1][G.faces[n][i].apply(v)] for i in range(n + 1))
    return FiniteSimplicialSet(cells, faces, cap=cap, name="underlying")


def component_count(S):
    parent = {v: v for v in S.nondegenerate(0)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in S.nondegenerate(1):
        (a, _), (b, _) = S.faces[e]
        parent[find(a)] = find(b)
    return len({find(v) for v in parent})


def linear_horn_check(G, up_to=None):
    """Every horn in the simplicial module fills, decided by linear algebra.

    Horns Λ^n_i -> G are the compatible families (x_j)_{j != i} in G_{n-1};
    they form a subspace, and all of them fill iff that subspace lies in the
    image of x -> (d_j x)_{j != i}.  Returns the first failing (n, i) or None.
    """
    from .linalg import hstack, kernel_basis as kb, rank
    up_to = G.cap if up_to is None else up_to
    K = G.K
    for n in range(1, up_to + 1):
        r = G.ranks[n - 1]
        for i in range(n + 1):
            idx = [j for j in range(n + 1) if j != i]
            blocks = []
            for a, j in enumerate(idx):
                for b, k in enumerate(idx):
                    if j < k:
                        row = [None] * len(idx)
                        if n >= 2:
                            row[b] = G.faces[n - 1][j]
                            prev = G.faces[n - 1][k - 1]
                            row[a] = -prev if row[a] is None else row[a] - prev
                            blocks.append(row)
            nvars = r * len(idx)
            if blocks:
                from .linalg import block
                cons = block(K, blocks, [G.ranks[n - 2]] * len(blocks), [r] * len(idx))
                horns = kb(cons)
            else:
                horns = [tuple(K(int(a == b)) for a in range(nvars)) for b in range(nvars)]
            F = vstack([G.faces[n][j] for j in idx], K=K, ncols=G.ranks[n])
            if horns:
                H = Mat.from_columns(K, horns, nvars)
                if rank(hstack([F, H], K=K, nrows=nvars)) != rank(F):
                    return n, i
    return None
