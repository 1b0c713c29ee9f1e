"""Chain complexes of finite-rank free modules with exact differentials.

Conventions (fixed once, used everywhere):

* cohomological grading: ``d(i): C^i -> C^{i+1}``;
* shift: ``(C[n])^i = C^{i+n}`` with differential ``(-1)^n d``;
* cone of ``f: A -> B``: ``Cone(f)^i = A^{i+1} + B^i`` and
  ``d(a, b) = (-d_A a, f a + d_B b)``;
* hom complex: ``d(f) = d_B f - (-1)^{|f|} f d_A``;
* totalization of ``K -> M -> Q``: column ``c`` sits in total degree ``i + c``;
  the maps between columns are used as given and the internal differential of
  column ``c`` is multiplied by ``(-1)^c``.

Translation to homological notation: ``C_k = C^{-k}`` and ``H_k = H^{-k}``.
The shift notation agrees with the homological one, ``C[n]_k = C_{k-n}``.

A complex is stored on a finite window ``[lo, hi]``.  Either side may be
declared periodic: beyond the window the ranks and differentials repeat with
the given period, which lets the two-sided and one-sided infinite complexes
over ``k[x]/(x^2)`` be finite data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .linalg import Coefficient, Mat, block, kernel_basis, rank, smith_diagonal, solve


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple = ()

    @property
    def ok(self):
        return not self.issues

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "valid" if self.ok else "; ".join(self.issues)


@dataclass(frozen=True)
class HomologyDescriptor:
    """Rank over a field; over Z also the torsion invariant factors (> 1)."""
    rank: int
    torsion: tuple = ()

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion


@dataclass(frozen=True, eq=True)
class ChainComplex:
    K: Coefficient
    lo: int
    hi: int
    ranks: tuple
    diffs: tuple  # diffs[j] = d(lo + j), for lo <= i < hi
    left_period: Optional[int] = None
    right_period: Optional[int] = None

    @classmethod
    def zero(cls, K):
        return cls(K, 0, -1, (), ())

    @classmethod
    def concentrated(cls, K, r, degree=0):
        return cls(K, degree, degree, (r,), ())

    @classmethod
    def from_diffs(cls, K, lo, ranks, diffs, left_period=None, right_period=None):
        ranks = tuple(ranks)
        return cls(K, lo, lo + len(ranks) - 1, ranks, tuple(diffs), left_period, right_period)

    # -- accessors ------------------------------------------------------------

    @property
    def is_empty(self):
        return self.lo > self.hi

    @property
    def is_bounded(self):
        return self.left_period is None and self.right_period is None

    def _fold(self, i):
        """Reduce a degree into the window using periodicity (None: zero)."""
        if self.is_empty:
            return None
        if i > self.hi:
            if not self.right_period:
                return None
            p = self.right_period
            i -= p * math.ceil((i - self.hi) / p)
        elif i < self.lo:
            if not self.left_period:
                return None
            p = self.left_period
            i += p * math.ceil((self.lo - i) / p)
        return i

    def rank(self, i):
        j = self._fold(i)
        return 0 if j is None else self.ranks[j - self.lo]

    def d(self, i):
        """Differential C^i -> C^{i+1}."""
        src = self.rank(i)
        tgt = self.rank(i + 1)
        if not self.is_empty:
            if self.lo <= i < self.hi:
                return self.diffs[i - self.lo]
            if i >= self.hi and self.right_period and self.hi - self.right_period >= self.lo - 1:
                m = self.d(i - self.right_period)
                if m.shape == (tgt, src):
                    return m
                raise ChainError(f"periodic seam shape mismatch at degree {i}")
            if i < self.lo and self.left_period:
                m = self.d(i + self.left_period)
                if m.shape == (tgt, src):
                    return m
                raise ChainError(f"periodic seam shape mismatch at degree {i}")
        return Mat.zeros(self.K, tgt, src)

    def check_degrees(self):
        """Window plus one full period on each periodic side."""
        if self.is_empty:
            return range(0)
        return range(self.lo - (self.left_period or 0), self.hi + (self.right_period or 0) + 1)

    def total_rank(self):
        return sum(self.ranks)

    def window(self, lo, hi):
        """Brutal truncation to degrees [lo, hi] (drops periodicity)."""
        return ChainComplex(self.K, lo, hi, tuple(self.rank(i) for i in range(lo, hi + 1)),
                            tuple(self.d(i) for i in range(lo, hi)))

    def trimmed(self):
        """Same bounded complex with zero-rank edges removed from the window."""
        if not self.is_bounded:
            return self
        nz = [i for i in range(self.lo, self.hi + 1) if self.rank(i)]
        if not nz:
            return ChainComplex.zero(self.K)
        return self.window(nz[0], nz[-1])

    def same_as(self, other):
        """Equality as complexes, ignoring zero-rank padding of bounded windows."""
        if self.is_bounded and other.is_bounded:
            return self.trimmed() == other.trimmed()
        return self == other


def validate_complex(C):
    issues = []
    if C.is_empty:
        if C.ranks or C.diffs:
            issues.append("empty window carries data")
        return ValidationReport(tuple(issues))
    n = C.hi - C.lo + 1
    if len(C.ranks) != n:
        issues.append(f"expected {n} ranks, got {len(C.ranks)}")
        return ValidationReport(tuple(issues))
    if any(r < 0 for r in C.ranks):
        issues.append("negative rank")
    if len(C.diffs) != n - 1:
        issues.append(f"expected {n - 1} differentials, got {len(C.diffs)}")
        return ValidationReport(tuple(issues))
    for j, m in enumerate(C.diffs):
        i = C.lo + j
        if m.K != C.K:
            issues.append(f"coefficient mismatch at degree {i}")
        if m.shape != (C.ranks[j + 1], C.ranks[j]):
            issues.append(f"shape mismatch at degree {i}: {m.shape} vs {(C.ranks[j + 1], C.ranks[j])}")
    for side, p in (("left", C.left_period), ("right", C.right_period)):
        if p is None:
            continue
        if p <= 0:
            issues.append(f"{side} period must be positive")
        elif n < p + 1:
            issues.append(f"{side} period {p} needs a window of at least {p + 1} degrees")
        elif side == "right" and C.ranks[-1] != C.ranks[-1 - p]:
            issues.append(f"right periodic seam: rank({C.hi}) != rank({C.hi - p})")
        elif side == "left" and C.ranks[0] != C.ranks[p]:
            issues.append(f"left periodic seam: rank({C.lo}) != rank({C.lo + p})")
    if issues:
        return ValidationReport(tuple(issues))
    degs = C.check_degrees()
    for i in range(degs.start - 1, degs.stop):
        try:
            dd = C.d(i + 1) @ C.d(i)
        except (ChainError, ValueError) as exc:
            issues.append(f"degree {i}: {exc}")
            continue
        if not dd.is_zero():
            issues.append(f"d²≠0 at degree {i}")
    return ValidationReport(tuple(issues))


def require_valid(C):
    rep = validate_complex(C)
    if not rep.ok:
        raise ChainError(f"invalid complex: {rep}")
    return C


def _require_complex(C):
    if not isinstance(C, ChainComplex):
        raise TypeError(f"homology needs a ChainComplex, not {type(C).__name__}")


def homology(C, i):
    _require_complex(C)
    if C.is_bounded and not C.is_empty and not (C.lo <= i <= C.hi):
        raise ChainError(f"degree {i} outside window [{C.lo}, {C.hi}] of a non-periodic complex")
    if C.is_empty:
        raise ChainError("the empty complex has no window")
    d_in, d_out = C.d(i - 1), C.d(i)
    if C.K.is_field:
        return HomologyDescriptor(C.rank(i) - rank(d_out) - rank(d_in))
    diag = smith_diagonal(d_in)
    free = C.rank(i) - rank(d_out) - sum(1 for x in diag if x)
    return HomologyDescriptor(free, tuple(x for x in diag if x > 1))


def homology_ranks(C):
    return {i: homology(C, i).rank for i in C.check_degrees()}


def is_acyclic(C):
    _require_complex(C)
    if C.is_empty:
        return True
    return all(homology(C, i).is_zero for i in C.check_degrees())


def euler_characteristic(C):
    if not C.is_bounded:
        raise ChainError("Euler characteristic needs a bounded complex")
    return sum((-1) ** i * C.rank(i) for i in range(C.lo, C.hi + 1))


def shift(C, n):
    if n == 0 or C.is_empty:
        return C
    s = (-1) ** n
    return ChainComplex(C.K, C.lo - n, C.hi - n, C.ranks,
                        tuple(m.scale(s) if s < 0 else m for m in C.diffs),
                        C.left_period, C.right_period)


def _bounded(*cs):
    for C in cs:
        if not C.is_bounded:
            raise ChainError("operation needs bounded complexes")


def _span(cs):
    cs = [C for C in cs if not C.is_empty]
    if not cs:
        return 0, -1
    return min(C.lo for C in cs), max(C.hi for C in cs)


def direct_sum(Cs, K=None):
    Cs = list(Cs)
    if not Cs:
        if K is None:
            raise ChainError("empty direct sum needs a coefficient")
        return ChainComplex.zero(K)
    K = Cs[0].K
    if any(C.K != K for C in Cs):
        raise ChainError("mixed coefficients in direct sum")
    if len(Cs) == 1:
        return Cs[0]
    periodic = [C for C in Cs if not C.is_bounded]
    if periodic:
        first = periodic[0]
        if any((C.lo, C.hi, C.left_period, C.right_period) != (first.lo, first.hi, first.left_period,
                                                               first.right_period) for C in Cs):
            raise ChainError("periodic summands need identical windows and periods")
        lo, hi = first.lo, first.hi
    else:
        lo, hi = _span(Cs)
    if lo > hi:
        return ChainComplex.zero(K)
    ranks = tuple(sum(C.rank(i) for C in Cs) for i in range(lo, hi + 1))
    from .linalg import block_diag
    diffs = tuple(block_diag(K, [C.d(i) for C in Cs]) for i in range(lo, hi))
    lp = periodic[0].left_period if periodic else None
    rp = periodic[0].right_period if periodic else None
    return ChainComplex(K, lo, hi, ranks, diffs, lp, rp)


# --- maps ---------------------------------------------------------------------

def _freeze_components(source, target, comps, degree):
    out = {}
    for i, m in dict(comps).items():
        if m.shape != (target.rank(i + degree), source.rank(i)):
            raise ChainError(f"component at degree {i} has shape {m.shape}, expected "
                             f"{(target.rank(i + degree), source.rank(i))}")
        if not m.is_zero():
            out[i] = m
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class ChainMap:
    """Degree-0 map of bounded complexes; components default to zero."""
    source: ChainComplex
    target: ChainComplex
    components: tuple = ()

    @classmethod
    def make(cls, source, target, comps):
        _bounded(source, target)
        if source.K != target.K:
            raise ChainError("mismatched coefficient rings")
        return cls(source, target, _freeze_components(source, target, comps, 0))

    @classmethod
    def identity(cls, C):
        return cls.make(C, C, {i: Mat.identity(C.K, C.rank(i)) for i in range(C.lo, C.hi + 1)})

    @classmethod
    def zero(cls, A, B):
        return cls.make(A, B, {})

    def __call__(self, i):
        for j, m in self.components:
            if j == i:
                return m
        return Mat.zeros(self.source.K, self.target.rank(i), self.source.rank(i))

    def degrees(self):
        lo, hi = _span([self.source, self.target])
        return range(lo - 1, hi + 2)

    def is_chain_map(self):
        return not self.defects()

    def defects(self):
        out = []
        for i in self.degrees():
            if not (self(i + 1) @ self.source.d(i) - self.target.d(i) @ self(i)).is_zero():
                out.append(i)
        return out

    def __matmul__(self, other):
        """Composition self ∘ other."""
        if other.target != self.source:
            raise ChainError("composition endpoints differ")
        lo, hi = _span([other.source, self.target])
        return ChainMap.make(other.source, self.target,
                             {i: self(i) @ other(i) for i in range(lo, hi + 1)})

    def __add__(self, other):
        lo, hi = _span([self.source, self.target])
        return ChainMap.make(self.source, self.target, {i: self(i) + other(i) for i in range(lo, hi + 1)})

    def __neg__(self):
        return ChainMap.make(self.source, self.target, {i: -m for i, m in self.components})

    def __sub__(self, other):
        return self + (-other)

    def shifted(self, n):
        s = shift(self.source, n)
        t = shift(self.target, n)
        return ChainMap.make(s, t, {i - n: m for i, m in self.components})


def is_chain_map(f):
    return f.is_chain_map()


@dataclass(frozen=True)
class ChainHomotopy:
    f: ChainMap
    g: ChainMap
    components: tuple = ()  # h(i): A^i -> B^{i-1}

    @classmethod
    def make(cls, f, g, comps):
        if (f.source, f.target) != (g.source, g.target):
            raise ChainError("homotopy between maps with different endpoints")
        return cls(f, g, _freeze_components(f.source, f.target, comps, -1))

    def __call__(self, i):
        for j, m in self.components:
            if j == i:
                return m
        A, B = self.f.source, self.f.target
        return Mat.zeros(A.K, B.rank(i - 1), A.rank(i))


def verify_homotopy(h):
    """f(i) - g(i) == d_B(i-1) h(i) + h(i+1) d_A(i) in every degree."""
    A, B = h.f.source, h.f.target
    if (h.g.source, h.g.target) != (A, B):
        return False
    for j, m in h.components:
        if m.shape != (B.rank(j - 1), A.rank(j)):
            return False
    lo, hi = _span([A, B])
    for i in range(lo - 1, hi + 2):
        lhs = h.f(i) - h.g(i)
        rhs = B.d(i - 1) @ h(i) + h(i + 1) @ A.d(i)
        if lhs != rhs:
            return False
    return True


# --- cone, totalization --------------------------------------------------------

def cone(f):
    """Mapping cone with its canonical maps B -> Cone(f) -> A[1]."""
    A, B = f.source, f.target
    K = A.K
    if B.K != K:
        raise ChainError("mismatched coefficient rings")
    _bounded(A, B)
    lo, hi = _span([shift(A, 1), B])
    if lo > hi:
        Z = ChainComplex.zero(K)
        return Z, ChainMap.zero(B, Z), ChainMap.zero(Z, shift(A, 1))
    ranks = tuple(A.rank(i + 1) + B.rank(i) for i in range(lo, hi + 1))
    diffs = []
    for i in range(lo, hi):
        a0, a1, a2 = A.rank(i + 1), A.rank(i + 2), B.rank(i)
        b1 = B.rank(i + 1)
        diffs.append(block(K, [[-A.d(i + 1), None], [f(i + 1), B.d(i)]], [a1, b1], [a0, a2]))
    C = require_valid(ChainComplex(K, lo, hi, ranks, tuple(diffs)))
    A1 = shift(A, 1)
    inc = {}
    proj = {}
    for i in range(lo, hi + 1):
        a, b = A.rank(i + 1), B.rank(i)
        inc[i] = block(K, [[None], [Mat.identity(K, b)]], [a, b], [b])
        proj[i] = block(K, [[Mat.identity(K, a), None]], [a], [a, b])
    return C, ChainMap.make(B, C, inc), ChainMap.make(C, A1, proj)


@dataclass(frozen=True)
class ExactTriple:
    K: ChainComplex
    M: ChainComplex
    Q: ChainComplex
    iota: ChainMap
    pi: ChainMap


def exactness_failures(T):
    """Degrees where the triple fails to be short exact (with reasons)."""
    out = []
    if T.iota.source != T.K or T.iota.target != T.M or T.pi.source != T.M or T.pi.target != T.Q:
        return [("all", "maps do not connect K -> M -> Q")]
    for name, f in (("iota", T.iota), ("pi", T.pi)):
        bad = f.defects()
        if bad:
            out.append((bad[0], f"{name} is not a chain map"))
    lo, hi = _span([T.K, T.M, T.Q])
    for i in range(lo, hi + 1):
        io, p = T.iota(i), T.pi(i)
        if rank(io) != T.K.rank(i):
            out.append((i, "iota not injective"))
        if rank(p) != T.Q.rank(i):
            out.append((i, "pi not surjective"))
        if not (p @ io).is_zero():
            out.append((i, "pi∘iota ≠ 0"))
        elif T.M.rank(i) != T.K.rank(i) + T.Q.rank(i):
            out.append((i, "image(iota) ≠ kernel(pi)"))
    return out


def totalize_exact_triple(T):
    bad = exactness_failures(T)
    if bad:
        deg, why = bad[0]
        raise ChainError(f"triple not exact at degree {deg}: {why}")
    X = total_complex([T.K, T.M, T.Q], [T.iota, T.pi])
    if not is_acyclic(X):
        raise ChainError("totalization of an exact triple is not acyclic")
    return X


def total_complex(columns, maps):
    """Total complex of a row of complexes joined by chain maps."""
    K = columns[0].K
    _bounded(*columns)
    spans = [(C.lo + c, C.hi + c) for c, C in enumerate(columns) if not C.is_empty]
    if not spans:
        return ChainComplex.zero(K)
    lo, hi = min(s[0] for s in spans), max(s[1] for s in spans)
    ncol = len(columns)

    def piece(n):
        return [columns[c].rank(n - c) for c in range(ncol)]

    ranks = tuple(sum(piece(n)) for n in range(lo, hi + 1))
    diffs = []
    for n in range(lo, hi):
        src, tgt = piece(n), piece(n + 1)
        blocks = [[None] * ncol for _ in range(ncol)]
        for c in range(ncol):
            blocks[c][c] = columns[c].d(n - c).scale((-1) ** c)
            if c + 1 < ncol:
                blocks[c + 1][c] = maps[c](n - c)
        diffs.append(block(K, blocks, tgt, src))
    return require_valid(ChainComplex(K, lo, hi, ranks, tuple(diffs)))


# --- hom complexes -------------------------------------------------------------

class HomSpace:
    """Graded maps between two bounded graded objects with degree +1 operators.

    ``src`` and ``tgt`` only need ``K``, ``lo``, ``hi``, ``rank(i)`` and ``d(i)``,
    so curved modules (whose operator does not square to zero) can use it too.
    Degree-n coordinates: for each source degree i (ascending), the block
    ``tgt^{i+n} x src^i`` in row-major order.
    """

    def __init__(self, src, tgt):
        self.src, self.tgt = src, tgt
        self.K = src.K
        if src.lo > src.hi or tgt.lo > tgt.hi:
            self.nlo, self.nhi = 0, -1
        else:
            self.nlo, self.nhi = tgt.lo - src.hi, tgt.hi - src.lo

    def degrees(self):
        return range(self.nlo, self.nhi + 1)

    def layout(self, n):
        out = []
        off = 0
        for i in range(self.src.lo, self.src.hi + 1):
            r, c = self.tgt.rank(i + n), self.src.rank(i)
            if r and c:
                out.append((i, r, c, off))
                off += r * c
        return out

    def dim(self, n):
        return sum(r * c for _, r, c, _ in self.layout(n))

    def to_vector(self, n, comps):
        v = []
        for i, r, c, _ in self.layout(n):
            m = comps.get(i)
            if m is None:
                v.extend([self.K(0)] * (r * c))
            else:
                v.extend(x for row in m.rows for x in row)
        return tuple(v)

    def from_vector(self, n, v):
        comps = {}
        for i, r, c, off in self.layout(n):
            comps[i] = Mat(self.K, [v[off + a * c: off + (a + 1) * c] for a in range(r)], c)
        return comps

    def component(self, n, comps, i):
        m = comps.get(i)
        if m is None:
            return Mat.zeros(self.K, self.tgt.rank(i + n), self.src.rank(i))
        return m

    def differential(self, n, comps):
        """d(f) = d_tgt f - (-1)^n f d_src, as components of degree n+1."""
        s = (-1) ** n
        out = {}
        for i in range(self.src.lo, self.src.hi + 1):
            val = self.tgt.d(i + n) @ self.component(n, comps, i)
            prev = self.component(n, comps, i + 1) @ self.src.d(i)
            out[i] = val - prev if s > 0 else val + prev
        return out

    def diff_matrix(self, n):
        cols = []
        dim = self.dim(n)
        for j in range(dim):
            e = [self.K(0)] * dim
            e[j] = self.K(1)
            cols.append(self.to_vector(n + 1, self.differential(n, self.from_vector(n, e))))
        return Mat.from_columns(self.K, cols, self.dim(n + 1))

    def compose(self, other, n_self, f, n_other, g):
        """(f ∘ g) where g in other (X -> src) of degree n_other, f in self."""
        out = {}
        for i in range(other.src.lo, other.src.hi + 1):
            gi = other.component(n_other, g, i)
            fi = self.component(n_self, f, i + n_other)
            out[i] = fi @ gi
        return out


def hom_complex(A, B):
    if not (A.is_bounded and B.is_bounded):
        raise ChainError("hom_complex needs bounded complexes")
    if not A.K.is_field or A.K != B.K:
        raise ChainError("hom_complex needs equal field coefficients")
    H = HomSpace(A, B)
    return complex_from_space(H)


def complex_from_space(H):
    degs = H.degrees()
    if not degs:
        return ChainComplex.zero(H.K)
    ranks = tuple(H.dim(n) for n in degs)
    diffs = tuple(H.diff_matrix(n) for n in range(degs.start, degs.stop - 1))
    return require_valid(ChainComplex(H.K, degs.start, degs.stop - 1, ranks, diffs))


def map_to_hom_vector(H, f, n=0):
    return H.to_vector(n, {i: m for i, m in f.components})


def homotopy_class_count(A, B):
    """|H^0 Hom(A, B)| over a finite field."""
    Hm = hom_complex(A, B)
    r = homology(Hm, 0).rank if Hm.lo <= 0 <= Hm.hi else 0
    return A.K.p ** r


def find_homotopy(f, g):
    """A chain homotopy f ~ g found by a linear solve, or None."""
    A, B = f.source, f.target
    H = HomSpace(A, B)
    target = {i: f(i) - g(i) for i in range(A.lo, A.hi + 1)}
    if H.dim(-1) == 0:
        ok = all(m.is_zero() for m in target.values())
        return ChainHomotopy.make(f, g, {}) if ok else None
    # d(h) = d_B h + h d_A for |h| = -1
    D = H.diff_matrix(-1)
    x = solve(D, H.to_vector(0, target))
    if x is None:
        return None
    return ChainHomotopy.make(f, g, H.from_vector(-1, x))


def kernel_complex_basis(C, i):
    return kernel_basis(C.d(i))
