"""Finite categories: presentations by generators and relations, materialized
composition tables, and isomorphism search."""
from __future__ import annotations

from dataclasses import dataclass


class WordBoundExceeded(RuntimeError):
    """The bounded congruence closure did not stabilize."""


@dataclass(frozen=True)
class FiniteCategory:
    """Objects, morphisms ``(name, src, tgt)``, identities and composition.

    ``compose[(g, f)]`` is ``g ∘ f`` (f first) for every composable pair.
    """
    objects: tuple
    morphisms: tuple
    identity: dict
    compose: dict

    def src(self, m):
        return self._ends()[m][0]

    def tgt(self, m):
        return self._ends()[m][1]

    def _ends(self):
        cache = self.__dict__.get("_ends_cache")
        if cache is None:
            cache = {name: (s, t) for name, s, t in self.morphisms}
            object.__setattr__(self, "_ends_cache", cache)
        return cache

    def hom(self, x, y):
        return [name for name, s, t in self.morphisms if s == x and t == y]

    def hom_sizes(self):
        return {(x, y): len(self.hom(x, y)) for x in self.objects for y in self.objects}

    def validate(self):
        issues = []
        ends = self._ends()
        for x in self.objects:
            i = self.identity.get(x)
            if i is None or ends.get(i) != (x, x):
                issues.append(f"bad identity at {x!r}")
        for (g, f), h in self.compose.items():
            if ends[f][1] != ends[g][0] or ends[h] != (ends[f][0], ends[g][1]):
                issues.append(f"composite {g!r}∘{f!r} has wrong endpoints")
        for f, (s, t) in ends.items():
            for g, (s2, t2) in ends.items():
                if s2 == t and (g, f) not in self.compose:
                    issues.append(f"missing composite {g!r}∘{f!r}")
            if self.compose.get((f, self.identity[s])) != f or self.compose.get((self.identity[t], f)) != f:
                issues.append(f"unit law fails for {f!r}")
        for f, (s, t) in ends.items():
            for g in self.hom_from(t):
                for h in self.hom_from(ends[g][1]):
                    if self.compose[(h, self.compose[(g, f)])] != self.compose[(self.compose[(h, g)], f)]:
                        issues.append(f"associativity fails at {h!r},{g!r},{f!r}")
        return issues

    def hom_from(self, x):
        return [name for name, s, _ in self.morphisms if s == x]

    def is_iso(self, f):
        s, t = self._ends()[f]
        return any(self.compose[(g, f)] == self.identity[s] and self.compose[(f, g)] == self.identity[t]
                   for g in self.hom(t, s))

    def is_final(self, x):
        return all(len(self.hom(y, x)) == 1 for y in self.objects)


def poset_category(elements, leq):
    """Category of a finite poset; morphism ``(a, b)`` exists iff a <= b."""
    elements = tuple(elements)
    mors = tuple(((a, b), a, b) for a in elements for b in elements if leq(a, b))
    ident = {a: (a, a) for a in elements}
    comp = {}
    for (f, a, b) in mors:
        for (g, b2, c) in mors:
            if b2 == b:
                comp[(g, f)] = (a, c)
    return FiniteCategory(elements, mors, ident, comp)


@dataclass(frozen=True)
class FiniteCategoryPresentation:
    """Generators ``(name, src, tgt)`` and relations ``(src, tgt, word1, word2)``.

    Words list generators in path order (first arrow first); the empty word
    at an object is its identity.
    """
    objects: tuple
    generators: tuple
    relations: tuple = ()

    @classmethod
    def from_category(cls, C):
        gens = tuple((m, s, t) for m, s, t in C.morphisms if C.identity[s] != m)
        gset = {g for g, _, _ in gens}
        rels = []
        for (g, f), h in sorted(C.compose.items(), key=repr):
            if f in gset and g in gset:
                rhs = () if h == C.identity[C.src(f)] else (h,)
                rels.append((C.src(f), C.tgt(g), (f, g), rhs))
        return cls(tuple(C.objects), gens, tuple(rels))

    def validate(self):
        issues = []
        ends = {g: (s, t) for g, s, t in self.generators}
        for s, t, w1, w2 in self.relations:
            for w in (w1, w2):
                if self._walk(ends, s, w) != t:
                    issues.append(f"relation word {w!r} is not a path {s!r} -> {t!r}")
        return issues

    @staticmethod
    def _walk(ends, s, word):
        cur = s
        for g in word:
            if g not in ends or ends[g][0] != cur:
                return None
            cur = ends[g][1]
        return cur

    def materialize(self, word_bound=3):
        return materialize(self, word_bound)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if _word_key(rb) < _word_key(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra


def _word_key(item):
    s, w = item
    return (len(w), repr(w))


def materialize(P, word_bound=3):
    """Bounded congruence closure of a presentation.

    All paths of length <= ``word_bound`` are generated, relations are applied
    in every context that stays within the bound, and the result is accepted
    only if every class has a representative shorter than the bound and
    composition of classes is independent of representatives.
    """
    issues = P.validate()
    if issues:
        raise ValueError("; ".join(issues))
    L = word_bound
    ends = {g: (s, t) for g, s, t in P.generators}
    out_gens = {}
    for g, s, t in P.generators:
        out_gens.setdefault(s, []).append(g)
    paths = {}  # (src, word) -> tgt
    for x in P.objects:
        frontier = [((), x)]
        paths[(x, ())] = x
        for _ in range(L):
            nxt = []
            for w, cur in frontier:
                for g in out_gens.get(cur, ()):
                    w2 = w + (g,)
                    paths[(x, w2)] = ends[g][1]
                    nxt.append((w2, ends[g][1]))
            frontier = nxt
    uf = _UnionFind()
    for key in paths:
        uf.find(key)
    rules = {}
    for s, t, w1, w2 in P.relations:
        rules.setdefault((s, w1), set()).add(w2)
        rules.setdefault((s, w2), set()).add(w1)
    lengths = sorted({len(w) for _, w in rules})
    # one pass suffices: union-find closes the one-step rewrite relation
    for (x, w) in paths:
        here = [x] + [ends[g][1] for g in w]
        for n in lengths:
            for p in range(len(w) - n + 1):
                for w2 in rules.get((here[p], w[p:p + n]), ()):
                    new = w[:p] + w2 + w[p + n:]
                    if len(new) <= L:
                        uf.union((x, w), (x, new))
    classes = {}
    for key in paths:
        classes.setdefault(uf.find(key), []).append(key)
    rep = {r: min(members, key=_word_key) for r, members in classes.items()}
    for r, (x, w) in rep.items():
        if len(w) >= L and L > 0:
            raise WordBoundExceeded(f"class of {w!r} at {x!r} has no word shorter than {L}")

    def reduce(x, w):
        while len(w) >= L and len(w) > 0:
            head = rep[uf.find((x, w[:L]))][1]
            w = head + w[L:]
        return uf.find((x, w))

    names = {}
    for r in sorted(rep, key=lambda r: (repr(rep[r][0]), _word_key(rep[r]))):
        x, w = rep[r]
        names[r] = (x, w)
    morphisms = tuple((names[r], names[r][0], paths[names[r]]) for r in names)
    identity = {x: names[uf.find((x, ()))] for x in P.objects}
    compose = {}
    by_src = {}
    for r, (x, w) in names.items():
        by_src.setdefault(x, []).append(r)
    for rf, (x, wf) in names.items():
        y = paths[(x, wf)]
        for rg in by_src.get(y, ()):
            wg = names[rg][1]
            val = reduce(x, wf + wg)
            for _, wf2 in classes[rf]:
                for _, wg2 in classes[rg]:
                    if reduce(x, wf2 + wg2) != val:
                        raise WordBoundExceeded("composition depends on representatives; raise word_bound")
            compose[(names[rg], names[rf])] = names[val]
    return FiniteCategory(tuple(P.objects), morphisms, identity, compose)


def find_category_isomorphism(C, D, hint=None):
    """An isomorphism of finite categories as ``(object_map, morphism_map)``.

    ``hint`` may propose images for some morphisms; they are tried first.
    Returns None when no isomorphism exists.
    """
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    hint = hint or {}
    c_sizes = C.hom_sizes()
    d_sizes = D.hom_sizes()

    def profile(cat, sizes, x):
        return (sizes[(x, x)], sorted(sizes[(x, y)] for y in cat.objects),
                sorted(sizes[(y, x)] for y in cat.objects))

    cprof = {x: profile(C, c_sizes, x) for x in C.objects}
    dprof = {y: profile(D, d_sizes, y) for y in D.objects}
    hinted_obj = {}
    for f, g in hint.items():
        hinted_obj.setdefault(C.src(f), D.src(g))
        hinted_obj.setdefault(C.tgt(f), D.tgt(g))

    def object_maps():
        objs = list(C.objects)
        used = set()
        assign = {}

        def rec(k):
            if k == len(objs):
                yield dict(assign)
                return
            x = objs[k]
            cands = [y for y in D.objects if y not in used and dprof[y] == cprof[x]]
            if x in hinted_obj and hinted_obj[x] in cands:
                cands.remove(hinted_obj[x])
                cands.insert(0, hinted_obj[x])
            for y in cands:
                if all(c_sizes[(x, z)] == d_sizes[(y, assign[z])] and
                       c_sizes[(z, x)] == d_sizes[(assign[z], y)] for z in assign):
                    assign[x] = y
                    used.add(y)
                    yield from rec(k + 1)
                    used.discard(y)
                    del assign[x]

        yield from rec(0)

    for omap in object_maps():
        found = _morphism_search(C, D, omap, hint)
        if found is not None:
            return omap, found
    return None


def _morphism_search(C, D, omap, hint):
    order = [C.identity[x] for x in C.objects]
    rest = [m for m, _, _ in C.morphisms if m not in set(order)]
    order += rest
    assign = {C.identity[x]: D.identity[omap[x]] for x in C.objects}
    used = set(assign.values())
    # composites to check once both factors are assigned
    checks = {}
    for (g, f), h in C.compose.items():
        checks.setdefault(f, []).append((g, f, h))
        checks.setdefault(g, []).append((g, f, h))
        checks.setdefault(h, []).append((g, f, h))

    def consistent(m):
        for g, f, h in checks.get(m, ()):
            if g in assign and f in assign and h in assign:
                if D.compose.get((assign[g], assign[f])) != assign[h]:
                    return False
        return True

    if not all(consistent(m) for m in list(assign)):
        return None
    pending = [m for m in order if m not in assign]

    def rec(k):
        if k == len(pending):
            return True
        m = pending[k]
        cands = [n for n in D.hom(omap[C.src(m)], omap[C.tgt(m)]) if n not in used]
        pref = hint.get(m)
        if pref in cands:
            cands.remove(pref)
            cands.insert(0, pref)
        for n in cands:
            assign[m] = n
            used.add(n)
            if consistent(m) and rec(k + 1):
                return True
            used.discard(n)
            del assign[m]
        return False

    return dict(assign) if rec(0) else None


def is_functor(C, D, omap, mmap):
    for m, s, t in C.morphisms:
        if D.src(mmap[m]) != omap[s] or D.tgt(mmap[m]) != omap[t]:
            return False
    if any(mmap[C.identity[x]] != D.identity[omap[x]] for x in C.objects):
        return False
    return all(D.compose[(mmap[g], mmap[f])] == mmap[h] for (g, f), h in C.compose.items())
