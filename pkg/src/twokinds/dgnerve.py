"""The differential graded nerve of a small DG-category.

An n-simplex is a chain of objects A_0..A_n together with, for every subset
I of {0..n} with at least two elements, an element f_I of
Hom^{2-|I|}(A_min I, A_max I) such that, writing I = {i_- < i_1 < ... < i_m < i_+},

    d(f_I) = sum_{j=1..m} (-1)^{j+1} (f_{I - i_j} - f_{i_j..i_+} ∘ f_{i_-..i_j}).

For |I| = 2 this says f_I is a closed degree-0 morphism, and for n = 2 it
reads d(f_012) = f_02 - f_12 ∘ f_01.

Faces restrict the family along the coface; degeneracies put identities on
the repeated edge and zero on every other subset containing both copies.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .linalg import Mat, kernel_basis, solve, vector_space
from .simplicial import FiniteSimplicialSet, homotopy_category, ident


class NerveError(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    pass


def subsets(n, min_size=2):
    """Subsets of [n] with at least ``min_size`` elements, by size then lexicographic."""
    return [c for r in range(min_size, n + 2) for c in itertools.combinations(range(n + 1), r)]


@dataclass(frozen=True)
class DGNerveSimplex:
    objects: tuple
    comps: tuple  # sorted (I, vector) pairs

    @classmethod
    def make(cls, objects, comps):
        return cls(tuple(objects), tuple(sorted((tuple(I), tuple(v)) for I, v in dict(comps).items())))

    @property
    def n(self):
        return len(self.objects) - 1

    def f(self, I):
        for J, v in self.comps:
            if J == I:
                return v
        raise KeyError(I)

    def as_dict(self):
        return dict(self.comps)

    def key(self):
        return (self.objects, tuple(tuple(int(x) for x in v) for _, v in self.comps))


def _deg(I):
    return 2 - len(I)


def _zero(A, X, Y, n):
    return tuple(A.K(0) for _ in range(A.dim(X, Y, n)))


def rhs(A, objects, comps, I):
    """Right-hand side of the defining equation for the subset I."""
    K = A.K
    X, Y = objects[I[0]], objects[I[-1]]
    deg = _deg(I) + 1
    out = _zero(A, X, Y, deg)
    m = len(I) - 2
    for j in range(1, m + 1):
        s = K((-1) ** (j + 1))
        ij = I[j]
        drop = tuple(x for x in I if x != ij)
        left = I[:j + 1]   # i_- .. i_j
        right = I[j:]      # i_j .. i_+
        term = comps[drop]
        comp = A.compose(objects[I[0]], objects[ij], objects[I[-1]], _deg(right), comps[right],
                         _deg(left), comps[left])
        out = tuple(K(o + s * (a - b)) for o, a, b in zip(out, term, comp))
    return out


def residual(A, objects, comps, I):
    X, Y = objects[I[0]], objects[I[-1]]
    lhs = A.d(X, Y, _deg(I), comps[I]) if A.dim(X, Y, _deg(I)) else _zero(A, X, Y, _deg(I) + 1)
    r = rhs(A, objects, comps, I)
    return tuple(A.K(a - b) for a, b in zip(lhs, r))


def validate_simplex(A, sigma):
    """Per-subset residuals of the defining equation; valid iff all vanish."""
    issues = []
    objs = sigma.objects
    for X in objs:
        if X not in A.objects:
            return [f"unknown object {X!r}"]
    comps = sigma.as_dict()
    for I in subsets(sigma.n):
        v = comps.get(I)
        want = A.dim(objs[I[0]], objs[I[-1]], _deg(I))
        if v is None or len(v) != want:
            issues.append(f"component f_{I} missing or of wrong size")
    if issues:
        return issues
    for I in subsets(sigma.n):
        res = residual(A, objs, comps, I)
        if any(res):
            issues.append(f"residual at I={I}: {tuple(int(x) for x in res)}")
    return issues


def face(A, sigma, k):
    n = sigma.n
    if not 0 <= k <= n or n < 1:
        raise NerveError("face index out of range")
    keep = [i for i in range(n + 1) if i != k]
    pos = {v: i for i, v in enumerate(keep)}
    objs = tuple(sigma.objects[i] for i in keep)
    comps = {tuple(pos[i] for i in I): v for I, v in sigma.comps if k not in I}
    return DGNerveSimplex.make(objs, comps)


def degeneracy(A, sigma, k):
    n = sigma.n
    if not 0 <= k <= n:
        raise NerveError("degeneracy index out of range")
    objs = sigma.objects[:k + 1] + sigma.objects[k:]
    src = sigma.as_dict()
    comps = {}
    for J in subsets(n + 1):
        X, Y = objs[J[0]], objs[J[-1]]
        if k in J and k + 1 in J:
            if J == (k, k + 1):
                comps[J] = tuple(A.identity[X])
            else:
                comps[J] = _zero(A, X, Y, _deg(J))
        else:
            comps[J] = src[tuple(j if j <= k else j - 1 for j in J)]
    return DGNerveSimplex.make(objs, comps)


def faces_and_degeneracies(A, sigma, k, kind="face"):
    return face(A, sigma, k) if kind == "face" else degeneracy(A, sigma, k)


def vertex(A, X):
    return DGNerveSimplex.make((X,), {})


# --- enumeration ----------------------------------------------------------------------

class _Affine:
    """Solutions of d(x) = r in one hom degree: particular solution plus cycles."""

    def __init__(self, A, X, Y, deg):
        self.A = A
        self.dim = A.dim(X, Y, deg)
        self.D = A.hom(X, Y).d(deg)
        self.Z = kernel_basis(self.D) if self.dim else []
        self._cycles = None

    def cycles(self):
        if self._cycles is None:
            K = self.A.K
            out = []
            for coeffs in vector_space(K, len(self.Z)):
                v = tuple(K(0) for _ in range(self.dim))
                for c, z in zip(coeffs, self.Z):
                    if c:
                        v = tuple(K(a + c * b) for a, b in zip(v, z))
                out.append(v)
            self._cycles = out
        return self._cycles

    def solutions(self, r):
        if self.dim == 0:
            return [()] if not any(r) else []
        x0 = solve(self.D, r)
        if x0 is None:
            return []
        K = self.A.K
        return [tuple(K(a + b) for a, b in zip(x0, z)) for z in self.cycles()]


def enumerate_simplices(A, n, budget=2_000_000, objects=None):
    """Every valid n-simplex, in a fixed deterministic order."""
    if not A.K.is_finite:
        raise NerveError("enumeration needs a finite field")
    if n > 3:
        raise NerveError("enumeration is capped at dimension 3")
    out = []
    order = subsets(n)
    spaces = {}
    tuples = [objects] if objects is not None else itertools.product(A.objects, repeat=n + 1)
    for objs in tuples:
        objs = tuple(objs)

        def space(I):
            key = (objs[I[0]], objs[I[-1]], _deg(I))
            if key not in spaces:
                spaces[key] = _Affine(A, *key)
            return spaces[key]

        comps = {}

        def rec(k):
            if k == len(order):
                out.append(DGNerveSimplex.make(objs, comps))
                if len(out) > budget:
                    raise EnumerationBudgetExceeded(f"more than {budget} simplices")
                return
            I = order[k]
            for v in space(I).solutions(rhs(A, objs, comps, I)):
                comps[I] = v
                rec(k + 1)
            comps.pop(I, None)

        rec(0)
    return out


def brute_force_count(A, n):
    """Count n-simplices by trying every element of every hom space.

    Independent of the solver: no linear systems, only the equation checked
    subset by subset.
    """
    total = 0
    order = subsets(n)
    K = A.K
    for objs in itertools.product(A.objects, repeat=n + 1):
        comps = {}

        def rec(k):
            nonlocal total
            if k == len(order):
                total += 1
                return
            I = order[k]
            X, Y = objs[I[0]], objs[I[-1]]
            dim = A.dim(X, Y, _deg(I))
            for v in vector_space(K, dim):
                comps[I] = v
                if not any(residual(A, objs, comps, I)):
                    rec(k + 1)
            comps.pop(I, None)

        rec(0)
    return total


# --- horn filling ---------------------------------------------------------------------

def horn_from_simplex(A, sigma, i):
    """The faces (except the i-th) of a simplex, as horn data."""
    return {j: face(A, sigma, j) for j in range(sigma.n + 1) if j != i}


def fill_horn(A, n, i, faces):
    """Fill Λ^n_i given faces {j: (n-1)-simplex}; None if the system is unsolvable.

    The unknowns are f_{[n] - i} and f_{[n]}; all other components come from
    the given faces.  The lexicographically least solution is returned.
    """
    if set(faces) != {j for j in range(n + 1) if j != i}:
        raise NerveError("horn data must give every face except the i-th")
    objs = [None] * (n + 1)
    comps = {}
    for j, tau in faces.items():
        keep = [x for x in range(n + 1) if x != j]
        for a, X in zip(keep, tau.objects):
            if objs[a] is None:
                objs[a] = X
            elif objs[a] != X:
                raise NerveError("horn faces disagree on objects")
        for I, v in tau.comps:
            J = tuple(keep[x] for x in I)
            if J in comps and comps[J] != v:
                raise NerveError(f"horn faces disagree on f_{J}")
            comps[J] = v
    objs = tuple(objs)
    K = A.K
    full = tuple(range(n + 1))
    facet = tuple(x for x in full if x != i)
    X0, Xn = objs[0], objs[-1]
    fx, fy = objs[facet[0]], objs[facet[-1]]
    dx = A.dim(fx, fy, _deg(facet))
    dy = A.dim(X0, Xn, _deg(full))

    def equations(xv, yv):
        c = dict(comps)
        c[facet] = xv
        c[full] = yv
        return residual(A, objs, c, facet) + residual(A, objs, c, full)

    zero_x = tuple(K(0) for _ in range(dx))
    zero_y = tuple(K(0) for _ in range(dy))
    base = equations(zero_x, zero_y)
    cols = []
    for t in range(dx + dy):
        xv = tuple(K(int(t == s)) for s in range(dx))
        yv = tuple(K(int(t - dx == s)) for s in range(dy))
        e = equations(xv, yv)
        cols.append(tuple(K(a - b) for a, b in zip(e, base)))
    nrows = len(base)
    if nrows == 0:
        sol = tuple(K(0) for _ in range(dx + dy))
    else:
        M = Mat.from_columns(K, cols, nrows) if cols else Mat.zeros(K, nrows, 0)
        target = tuple(K(-b) for b in base)
        if dx + dy == 0:
            sol = () if not any(target) else None
        else:
            sol = solve(M, target)
    if sol is None:
        return None
    c = dict(comps)
    c[facet] = tuple(sol[:dx])
    c[full] = tuple(sol[dx:])
    return DGNerveSimplex.make(objs, c)


def fill_inner_horn_dg(A, n, i, faces):
    if not 0 < i < n:
        raise NerveError("inner horn required")
    if n > 3:
        raise NerveError("filling is capped at dimension 3")
    out = fill_horn(A, n, i, faces)
    if out is None:
        raise NerveError("no solution: the horn faces are incompatible")
    return out


def horns(A, n, i, simplices_below):
    """All horns Λ^n_i assembled from the given (n-1)-simplices."""
    by_objs = {}
    for s in simplices_below:
        by_objs.setdefault(s.objects, []).append(s)
    idx = [j for j in range(n + 1) if j != i]
    out = []
    for objs in itertools.product(A.objects, repeat=n + 1):
        choices = []
        for j in idx:
            fo = tuple(objs[x] for x in range(n + 1) if x != j)
            choices.append(by_objs.get(fo, []))
        for pick in itertools.product(*choices):
            faces = dict(zip(idx, pick))
            if _compatible(faces, n):
                out.append(faces)
    return out


def _compatible(faces, n):
    seen = {}
    for j, tau in faces.items():
        keep = [x for x in range(n + 1) if x != j]
        for I, v in tau.comps:
            J = tuple(keep[x] for x in I)
            if seen.setdefault(J, v) != v:
                return False
    return True


# --- homotopy category ----------------------------------------------------------------

def nerve_truncation(A, cap=2, budget=2_000_000):
    """The nerve up to dimension ``cap`` as a finite simplicial set."""
    from .simplicial import codegeneracy
    if cap > 3:
        raise NerveError("the nerve is truncated at dimension 3 at most")
    layers = [[vertex(A, X) for X in A.objects]] + [enumerate_simplices(A, n, budget)
                                                    for n in range(1, cap + 1)]
    normal = {}
    cells = []
    faces = {}
    for n, layer in enumerate(layers):
        if n:
            for s in layers[n - 1]:
                x, tau = normal[s.key()]
                for j in range(n):
                    normal.setdefault(degeneracy(A, s, j).key(),
                                      (x, tuple(tau[a] for a in codegeneracy(n - 1, j))))
        fresh = []
        for s in layer:
            k = s.key()
            if k in normal:
                continue
            normal[k] = (k, ident(n))
            fresh.append(k)
            if n:
                faces[k] = tuple(normal[face(A, s, j).key()] for j in range(n + 1))
        cells.append(fresh)
    return FiniteSimplicialSet(cells, faces, cap=cap, name=f"N_DG≤{cap}")


def h0_of_nerve(A, word_bound=2, budget=2_000_000):
    S = nerve_truncation(A, 2, budget)
    return homotopy_category(S, word_bound), S


def nerve_vertex_name(simplex_key):
    return simplex_key[0][0]
