"""Finite simplicial sets stored through their nondegenerate simplices.

A simplex is a pair ``(x, sigma)`` where ``x`` labels a nondegenerate
k-simplex and ``sigma`` is an order-preserving surjection ``[n] -> [k]`` given
as a tuple of length n+1; it stands for ``sigma^* x``.  Every nondegenerate
simplex records its faces in this normal form, and all simplicial operators
are computed from those faces by epi-mono factorization.
"""
from __future__ import annotations

import itertools
from math import comb

from .fincat import FiniteCategory, FiniteCategoryPresentation, materialize


class SimplicialError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def ident(k):
    return tuple(range(k + 1))


def coface(n, i):
    """delta_i: [n-1] -> [n] skipping i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def codegeneracy(n, i):
    """sigma_i: [n+1] -> [n] hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def surjections(n, k):
    """Order-preserving surjections [n] -> [k], lexicographic."""
    out = []
    for cuts in itertools.combinations(range(1, n + 1), k):
        s, level = [], 0
        cut = set(cuts)
        for j in range(n + 1):
            if j in cut:
                level += 1
            s.append(level)
        out.append(tuple(s))
    return out


class FiniteSimplicialSet:
    """Nondegenerate simplices per dimension plus their faces in normal form."""

    def __init__(self, cells, faces, cap=None, name=None):
        self.cells = tuple(tuple(c) for c in cells)
        self.faces = dict(faces)
        self.name = name
        self._dim = {}
        for n, layer in enumerate(self.cells):
            for x in layer:
                if x in self._dim:
                    raise SimplicialError(f"duplicate simplex label {x!r}")
                self._dim[x] = n
        self.cap = cap if cap is not None else max(len(self.cells) - 1, 0)
        self._restrict_cache = {}

    # -- basic data -------------------------------------------------------------

    def dim_of(self, x):
        return self._dim[x]

    def __contains__(self, x):
        return x in self._dim

    def nondegenerate(self, n):
        return self.cells[n] if n < len(self.cells) else ()

    def f_vector(self):
        v = [len(c) for c in self.cells]
        while v and v[-1] == 0:
            v.pop()
        return tuple(v)

    @property
    def dimension(self):
        return len(self.f_vector()) - 1

    def labels(self):
        return [x for layer in self.cells for x in layer]

    # -- operators --------------------------------------------------------------

    def nd(self, x):
        return (x, ident(self._dim[x]))

    def _restrict(self, x, S):
        """x restricted to the vertex subset S (increasing tuple)."""
        key = (x, S)
        hit = self._restrict_cache.get(key)
        if hit is not None:
            return hit
        k = self._dim[x]
        if len(S) == k + 1:
            out = (x, ident(k))
        else:
            j = max(set(range(k + 1)) - set(S))
            y, tau = self.faces[x][j]
            inner = tuple(s if s < j else s - 1 for s in S)
            out = self.apply(inner, (y, tau))
        self._restrict_cache[key] = out
        return out

    def apply(self, alpha, simplex):
        """alpha^* simplex for a monotone alpha: [m] -> [n]."""
        x, sigma = simplex
        comp = tuple(sigma[a] for a in alpha)
        S = tuple(sorted(set(comp)))
        pos = {v: i for i, v in enumerate(S)}
        z, rho = self._restrict(x, S)
        return (z, tuple(rho[pos[c]] for c in comp))

    def face(self, simplex, i):
        n = len(simplex[1]) - 1
        return self.apply(coface(n, i), simplex)

    def degeneracy(self, simplex, i):
        n = len(simplex[1]) - 1
        return self.apply(codegeneracy(n, i), simplex)

    def vertices(self, simplex):
        return tuple(self.apply((v,), simplex)[0] for v in range(len(simplex[1])))

    def all_simplices(self, n):
        """Every n-simplex, degenerate ones included, as normal forms."""
        out = []
        for k in range(min(n, len(self.cells) - 1) + 1):
            for sigma in surjections(n, k):
                for x in self.cells[k]:
                    out.append((x, sigma))
        return out

    def validate(self):
        issues = []
        for n, layer in enumerate(self.cells):
            for x in layer:
                fs = self.faces.get(x, ())
                if n == 0:
                    if fs:
                        issues.append(f"vertex {x!r} has faces")
                    continue
                if len(fs) != n + 1:
                    issues.append(f"{x!r} has {len(fs)} faces, expected {n + 1}")
                    continue
                bad = False
                for i, (y, tau) in enumerate(fs):
                    if y not in self._dim:
                        issues.append(f"face {i} of {x!r} references unknown {y!r}")
                        bad = True
                    elif len(tau) != n or tuple(sorted(set(tau))) != ident(self._dim[y]) or list(tau) != sorted(tau):
                        issues.append(f"face {i} of {x!r} has malformed degeneracy {tau!r}")
                        bad = True
                    elif self._dim[y] == n - 1 and y == x:
                        bad = True
                if bad or n < 2:
                    continue
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face(fs[j], i)
                        rhs = self.face(fs[i], j - 1)
                        if lhs != rhs:
                            issues.append(f"d_{i} d_{j} != d_{j - 1} d_{i} on {x!r}")
        return issues

    def __repr__(self):
        return f"FiniteSimplicialSet({self.name or ''} f={self.f_vector()})"


# --- constructors ----------------------------------------------------------------

def ordered_complex(chains, name=None, cap=None):
    """Simplicial set of an ordered simplicial complex.

    ``chains`` are increasing vertex tuples closed under taking sub-tuples
    (missing sub-tuples are added).  Labels are the tuples themselves.
    """
    full = set()
    for c in chains:
        c = tuple(c)
        for r in range(1, len(c) + 1):
            full.update(itertools.combinations(c, r))
    top = max((len(c) for c in full), default=0)
    cells = [sorted((c for c in full if len(c) == n + 1), key=_sort_key) for n in range(top)]
    faces = {}
    for layer in cells[1:]:
        for c in layer:
            faces[c] = tuple((c[:i] + c[i + 1:], ident(len(c) - 2)) for i in range(len(c)))
    return FiniteSimplicialSet(cells, faces, cap=cap, name=name)


def _sort_key(x):
    return repr(x)


def standard_simplex(n):
    if n < 0:
        raise SimplicialError("simplex dimension must be nonnegative")
    return ordered_complex([ident(n)], name=f"Δ^{n}")


def horn(n, i):
    if not (0 <= i <= n) or n < 1:
        raise SimplicialError(f"horn index out of range: Λ^{n}_{i}")
    keep = [c for r in range(1, n + 1) for c in itertools.combinations(range(n + 1), r)
            if len(c) < n or (len(c) == n and i in c)]
    S = ordered_complex(keep, name=f"Λ^{n}_{i}", cap=n)
    return S


def boundary(n):
    keep = [c for r in range(1, n + 1) for c in itertools.combinations(range(n + 1), r)]
    return ordered_complex(keep, name=f"∂Δ^{n}", cap=n)


def empty_set():
    return FiniteSimplicialSet([], {}, cap=0, name="∅")


def poset_nerve(elements, leq, name=None):
    """Nerve of a finite poset: simplices are strictly increasing chains."""
    elements = list(elements)
    rank = {e: i for i, e in enumerate(_linear_extension(elements, leq))}
    chains = []

    def grow(chain):
        chains.append(tuple(chain))
        for e in elements:
            if e != chain[-1] and leq(chain[-1], e):
                grow(chain + [e])

    for e in elements:
        grow([e])
    full = set(chains)
    top = max(len(c) for c in full) if full else 0
    cells = [sorted((c for c in full if len(c) == n + 1), key=lambda c: [rank[v] for v in c])
             for n in range(top)]
    faces = {c: tuple((c[:i] + c[i + 1:], ident(len(c) - 2)) for i in range(len(c)))
             for layer in cells[1:] for c in layer}
    return FiniteSimplicialSet(cells, faces, name=name)


def _linear_extension(elements, leq):
    rest = list(elements)
    out = []
    while rest:
        for e in rest:
            if not any(f != e and leq(f, e) for f in rest):
                out.append(e)
                rest.remove(e)
                break
        else:
            raise SimplicialError("relation is not a partial order")
    return out


def boolean_poset(ground):
    ground = tuple(ground)
    subsets = [frozenset(c) for r in range(len(ground) + 1) for c in itertools.combinations(ground, r)]
    return subsets, lambda a, b: a <= b


def nerve_of_category(P, cap=3, word_bound=3):
    """Nerve of a finite category (or of a presentation, materialized first).

    Nondegenerate n-simplices are chains of n composable non-identity
    morphisms; a face composing two arrows to an identity is degenerate.
    """
    C = P if isinstance(P, FiniteCategory) else materialize(P, word_bound)
    idents = set(C.identity.values())
    nonid = [m for m, _, _ in C.morphisms if m not in idents]
    cells = [[("obj", x) for x in C.objects]]
    faces = {}

    def normal(chain, first_obj):
        """Normal form of a possibly degenerate chain of morphisms."""
        kept = [m for m in chain if m not in idents]
        sigma, level = [0], 0
        for m in chain:
            if m not in idents:
                level += 1
            sigma.append(level)
        label = ("obj", first_obj) if not kept else ("mor",) + tuple(kept)
        return label, tuple(sigma)

    layer = [(m,) for m in nonid]
    n = 1
    while layer and n <= cap:
        labels = []
        for ch in layer:
            x = ("mor",) + ch
            labels.append(x)
            fs = []
            for i in range(n + 1):
                if i == 0:
                    rest, start = ch[1:], C.tgt(ch[0])
                elif i == n:
                    rest, start = ch[:-1], C.src(ch[0])
                else:
                    rest = ch[:i - 1] + (C.compose[(ch[i], ch[i - 1])],) + ch[i + 1:]
                    start = C.src(ch[0])
                fs.append(normal(rest, start))
            faces[x] = tuple(fs)
        cells.append(labels)
        layer = [ch + (m,) for ch in layer for m in nonid if C.src(m) == C.tgt(ch[-1])]
        n += 1
    return FiniteSimplicialSet(cells, faces, cap=cap, name="N(C)")


# --- maps ----------------------------------------------------------------------------

class SimplicialMap:
    """Assignment from nondegenerate source simplices to target normal forms."""

    def __init__(self, source, target, assignment):
        self.source, self.target = source, target
        self.assignment = dict(assignment)

    def __call__(self, simplex):
        x, sigma = simplex
        return self.target.apply(sigma, self.assignment[x])

    def validate(self):
        issues = []
        for n, layer in enumerate(self.source.cells):
            for x in layer:
                y = self.assignment.get(x)
                if y is None:
                    issues.append(f"no image for {x!r}")
                    continue
                if len(y[1]) != n + 1:
                    issues.append(f"image of {x!r} has wrong dimension")
                    continue
                for i in range(n + 1 if n else 0):
                    if self(self.source.faces[x][i]) != self.target.face(y, i):
                        issues.append(f"face {i} of {x!r} not preserved")
        return issues

    def key(self):
        return tuple(self.assignment[x] for x in self.source.labels())

    def __matmul__(self, other):
        return SimplicialMap(other.source, self.target,
                             {x: self(other(other.source.nd(x))) for x in other.source.labels()})


def enumerate_maps(X, Y, fixed=None, budget=200000):
    """All simplicial maps X -> Y extending ``fixed`` (lexicographic order)."""
    fixed = dict(fixed or {})
    order = X.labels()
    out = []
    by_dim = {}
    count = [0]

    def cands(x):
        n = X.dim_of(x)
        if n not in by_dim:
            by_dim[n] = Y.all_simplices(n)
        return by_dim[n]

    assign = {}

    def rec(k):
        if k == len(order):
            out.append(SimplicialMap(X, Y, dict(assign)))
            if len(out) > budget:
                raise BudgetExceeded(f"more than {budget} maps")
            return
        x = order[k]
        n = X.dim_of(x)
        options = [fixed[x]] if x in fixed else cands(x)
        for y in options:
            count[0] += 1
            if count[0] > 50 * budget:
                raise BudgetExceeded("candidate budget exhausted")
            if n and any(Y.apply(sig, assign[z]) != Y.face(y, i)
                         for i, (z, sig) in enumerate(X.faces[x])):
                continue
            assign[x] = y
            rec(k + 1)
            del assign[x]

    rec(0)
    return out


def horn_fillers(S, n, i, horn_map):
    """n-simplices of S whose faces other than the i-th match the horn."""
    H = horn(n, i)
    want = {j: horn_map(H.nd(tuple(c for c in ident(n) if c != j))) for j in range(n + 1) if j != i}
    return [s for s in S.all_simplices(n) if all(S.face(s, j) == f for j, f in want.items())]


def check_horns(S, up_to, inner_only=True):
    """First unfillable horn as ``(n, i, map)`` or None."""
    for n in range(2 if inner_only else 1, up_to + 1):
        idx = range(1, n) if inner_only else range(n + 1)
        for i in idx:
            for f in enumerate_maps(horn(n, i), S):
                if not horn_fillers(S, n, i, f):
                    return n, i, f
    return None


class Verdict:
    def __init__(self, ok, witness=None):
        self.ok, self.witness = ok, witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Verdict({self.ok}, witness={self.witness!r})"


def is_quasicategory(S, up_to=3):
    bad = check_horns(S, up_to, inner_only=True)
    if bad is None:
        return Verdict(True)
    n, i, f = bad
    return Verdict(False, (n, i, f.assignment))


def is_kan(S, up_to=3):
    bad = check_horns(S, up_to, inner_only=False)
    return Verdict(True) if bad is None else Verdict(False, (bad[0], bad[1], bad[2].assignment))


# --- joins and slices --------------------------------------------------------------

def _join_simplex(S, T, a, b):
    """Join of an S-simplex and a T-simplex (either may be None)."""
    if b is None:
        return (("L", a[0]), a[1])
    if a is None:
        return (("R", b[0]), b[1])
    k = S.dim_of(a[0])
    return (("J", a[0], b[0]), a[1] + tuple(k + 1 + t for t in b[1]))


def join(S, T):
    cells = {}
    faces = {}

    def put(n, label, fs):
        cells.setdefault(n, []).append(label)
        if fs:
            faces[label] = fs

    for n, layer in enumerate(S.cells):
        for x in layer:
            put(n, ("L", x), tuple(((("L", y), s)) for y, s in S.faces.get(x, ())))
    for n, layer in enumerate(T.cells):
        for y in layer:
            put(n, ("R", y), tuple(((("R", z), s)) for z, s in T.faces.get(y, ())))
    for i, la in enumerate(S.cells):
        for j, lb in enumerate(T.cells):
            for x in la:
                for y in lb:
                    fs = []
                    for r in range(i + 1):
                        a = S.faces[x][r] if i else None
                        fs.append(_join_simplex(S, T, a, T.nd(y)))
                    for r in range(j + 1):
                        b = T.faces[y][r] if j else None
                        fs.append(_join_simplex(S, T, S.nd(x), b))
                    put(i + j + 1, ("J", x, y), tuple(fs))
    top = max(cells) + 1 if cells else 0
    return FiniteSimplicialSet([cells.get(n, []) for n in range(top)], faces, cap=S.cap + T.cap + 1,
                               name=f"({S.name})⋆({T.name})")


def join_map(f, g, S2, T2, S, T):
    """f ⋆ g : S2 ⋆ T2 -> S ⋆ T on the joins built by ``join``."""
    J2, J = join(S2, T2), join(S, T)
    assign = {}
    for x in J2.labels():
        tag = x[0]
        if tag == "L":
            assign[x] = _join_simplex(S, T, f(S2.nd(x[1])), None)
        elif tag == "R":
            assign[x] = _join_simplex(S, T, None, g(T2.nd(x[1])))
        else:
            assign[x] = _join_simplex(S, T, f(S2.nd(x[1])), g(T2.nd(x[2])))
    return J2, J, SimplicialMap(J2, J, assign)


def _simplex_map(m, n, alpha):
    """The map Δ^m -> Δ^n induced by monotone alpha."""
    A, B = standard_simplex(m), standard_simplex(n)
    assign = {}
    for c in A.labels():
        img = tuple(alpha[v] for v in c)
        S = tuple(sorted(set(img)))
        pos = {v: i for i, v in enumerate(S)}
        assign[c] = (S, tuple(pos[v] for v in img))
    return SimplicialMap(A, B, assign)


def _slice(p, max_dim, budget, side):
    C, D = p.source, p.target
    ident_C = SimplicialMap(C, C, {x: C.nd(x) for x in C.labels()})

    def joined(n):
        Dn = standard_simplex(n)
        return join(Dn, C) if side == "over" else join(C, Dn)

    def fixed(J):
        tag = "R" if side == "over" else "L"
        return {(tag, x): p(C.nd(x)) for x in C.labels()}

    def pull(n, m, alpha, key_map):
        f = _simplex_map(m, n, alpha)
        if side == "over":
            _, _, jm = join_map(f, ident_C, standard_simplex(m), C, standard_simplex(n), C)
        else:
            _, _, jm = join_map(ident_C, f, C, standard_simplex(m), C, standard_simplex(n))
        return key_map @ jm

    all_maps = []
    normal = {}
    cells = []
    faces = {}
    for n in range(max_dim + 1):
        J = joined(n)
        maps = enumerate_maps(J, D, fixed(J), budget=budget)
        all_maps.append({m.key(): m for m in maps})
        degen = {}
        for k in range(n):
            for x in cells[k]:
                src = all_maps[k][x]
                for sig in surjections(n, k):
                    degen[pull(k, n, sig, src).key()] = (x, sig)
        layer = []
        for key, m in all_maps[n].items():
            if key in degen:
                normal[key] = degen[key]
            else:
                normal[key] = (key, ident(n))
                layer.append(key)
        cells.append(layer)
        if n:
            for key in layer:
                m = all_maps[n][key]
                faces[key] = tuple(normal[pull(n, n - 1, coface(n, i), m).key()] for i in range(n + 1))
    return FiniteSimplicialSet(cells, faces, cap=max_dim, name=f"{side}-category")


def over_category(p, max_dim=2, budget=100000):
    """D_{/p}: n-simplices are maps Δ^n ⋆ C -> D restricting to p on C."""
    if max_dim > 3:
        raise SimplicialError("max_dim must be at most 3")
    return _slice(p, max_dim, budget, "over")


def under_category(p, max_dim=2, budget=100000):
    """D_{p/}: n-simplices are maps C ⋆ Δ^n -> D restricting to p on C."""
    if max_dim > 3:
        raise SimplicialError("max_dim must be at most 3")
    return _slice(p, max_dim, budget, "under")


# --- homotopy category -------------------------------------------------------------

def homotopy_category(S, word_bound=3):
    """Presentation with objects = vertices, generators = edges, relations from 2-simplices.

    Degenerate edges are identities (empty words), which accounts for the
    relations coming from degenerate 2-simplices.
    """
    objects = tuple(S.nondegenerate(0))
    gens = []
    for e in S.nondegenerate(1):
        (t, _), (s, _) = S.faces[e]
        gens.append((e, s, t))

    def word(edge):
        x, sigma = edge
        return () if len(set(sigma)) == 1 else (x,)

    rels = []
    for tau in S.nondegenerate(2):
        d0, d1, d2 = S.faces[tau]
        s = S.vertices(S.nd(tau))
        rels.append((s[0], s[2], word(d2) + word(d0), word(d1)))
    P = FiniteCategoryPresentation(objects, tuple(gens), tuple(rels))
    materialize(P, word_bound)  # fail loudly if the bound is too small
    return P


def is_final(S, v, word_bound=3):
    C = materialize(homotopy_category(S, word_bound), word_bound)
    return C.is_final(v)


def homotopy_limit_check(p, candidate, word_bound=3, budget=100000):
    """Whether ``candidate`` (a vertex of D_{/p}, given by its map key or as a
    SimplicialMap Δ^0 ⋆ C -> D) is final in the over-category."""
    O = over_category(p, max_dim=2, budget=budget)
    key = candidate.key() if isinstance(candidate, SimplicialMap) else candidate
    if key not in O.nondegenerate(0):
        raise SimplicialError("candidate is not a vertex of the over-category")
    return is_final(O, key, word_bound)


def cone_vertex(p, apex):
    """The vertex of D_{/p} sending the cone point to ``apex`` if it exists.

    Needs D to be the nerve of a poset (then the cone is unique).
    """
    O = over_category(p, max_dim=0)
    for key in O.nondegenerate(0):
        J = join(standard_simplex(0), p.source)
        m = dict(zip(J.labels(), key))
        if m[("L", (0,))][0] == (apex,):
            return key
    return None


# --- coherent realization hom cubes --------------------------------------------------

def coherent_poset(k, m):
    """Subsets of [k, m] containing both endpoints, ordered by inclusion."""
    inner = list(range(k + 1, m))
    return [frozenset({k, m} | set(c)) for r in range(len(inner) + 1) for c in itertools.combinations(inner, r)]


def _subset_label(s):
    return tuple(sorted(s))


def coherent_hom(n, k, m):
    """Hom from k to m in the coherent realization of Δ^n (empty if k > m)."""
    if not (0 <= k <= n and 0 <= m <= n):
        raise SimplicialError("index out of range")
    if k > m:
        return empty_set()
    P = coherent_poset(k, m)
    chains = _chains(P)
    return ordered_complex([tuple(_subset_label(s) for s in c) for c in chains], name=f"hom({k},{m})")


def _chains(P):
    P = sorted(P, key=lambda s: (len(s), sorted(s)))
    out = []

    def grow(c):
        out.append(tuple(c))
        for s in P:
            if c[-1] < s:
                grow(c + [s])

    for s in P:
        grow([s])
    return out


def coherent_horn_hom(n, i):
    """Hom from 0 to n in the coherent realization of the horn Λ^n_i.

    A chain of subsets survives iff it lies in a cube face coming from a
    face of Δ^n that the horn keeps: its bottom contains some 0<j<n (the
    chain factors through j), or its top misses some 0<k<n with k != i.
    """
    if not 0 < i < n:
        raise SimplicialError("inner horn index required")
    inner = set(range(1, n))
    keep = []
    for c in _chains(coherent_poset(0, n)):
        bottom, top = c[0], c[-1]
        if bottom & inner or any(k not in top for k in inner - {i}):
            keep.append(tuple(_subset_label(s) for s in c))
    return ordered_complex(keep, name=f"hom_Λ({n},{i})")


def cube_nerve(d):
    """Nerve of the Boolean poset on d elements, labelled by sorted tuples."""
    subsets, leq = boolean_poset(range(1, d + 1))
    chains = _chains(subsets)
    return ordered_complex([tuple(_subset_label(s) for s in c) for c in chains], name=f"cube^{d}")


# --- isomorphism search --------------------------------------------------------------

def find_isomorphism(S, T, hint=None):
    """A bijection of nondegenerate simplices commuting with faces, or None."""
    if S.f_vector() != T.f_vector():
        return None
    hint = hint or {}
    sig_S, sig_T = _vertex_signatures(S), _vertex_signatures(T)
    if sorted(sig_S.values()) != sorted(sig_T.values()):
        return None
    # each simplex is placed right after the last of its vertices
    verts = {x: set(S.vertices(S.nd(x))) for x in S.labels()}
    order, placed = [], set()
    for v in S.nondegenerate(0):
        placed.add(v)
        order.append(v)
        for n in range(1, len(S.cells)):
            for x in S.cells[n]:
                if v in verts[x] and verts[x] <= placed:
                    order.append(x)
    assign, used = {}, set()

    def ok(x, y):
        n = S.dim_of(x)
        if n == 0:
            return sig_S[x] == sig_T[y]
        for i in range(n + 1):
            (a, sa), (b, sb) = S.faces[x][i], T.faces[y][i]
            if sa != sb or assign.get(a) != b:
                return False
        return True

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        cands = [y for y in T.nondegenerate(S.dim_of(x)) if y not in used]
        if hint.get(x) in cands:
            cands.remove(hint[x])
            cands.insert(0, hint[x])
        for y in cands:
            if ok(x, y):
                assign[x] = y
                used.add(y)
                if rec(k + 1):
                    return True
                used.discard(y)
                del assign[x]
        return False

    return dict(assign) if rec(0) else None


def _vertex_signatures(S):
    sig = {v: {} for v in S.nondegenerate(0)}
    for x in S.labels():
        for pos, v in enumerate(S.vertices(S.nd(x))):
            key = (S.dim_of(x), pos)
            sig[v][key] = sig[v].get(key, 0) + 1
    return {v: tuple(sorted(d.items())) for v, d in sig.items()}


def simplex_counts(S):
    return S.f_vector()


def fubini(n):
    """Ordered set partitions of an n-element set."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, j) * a[m - j] for j in range(1, m + 1)))
    return a[n]
