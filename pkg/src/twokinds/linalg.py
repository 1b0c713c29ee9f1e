"""Exact dense linear algebra over F_p, Q and Z.

Matrices are immutable ``Mat`` values that carry their coefficient ring.
A matrix for a map V -> W has ``dim W`` rows and ``dim V`` columns, so
composition is ``g @ f``.  Row reduction always picks the leftmost pivot
column and the topmost usable row, which makes every derived basis
reproducible bit for bit.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p):
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class Coefficient:
    kind: str  # "Fp", "Q" or "Z"
    p: int = 0

    def __post_init__(self):
        if self.kind == "Fp":
            if not (_is_prime(self.p) and self.p <= 97):
                raise ValueError(f"F_p needs a prime p <= 97, got {self.p}")
        elif self.kind in ("Q", "Z"):
            if self.p:
                raise ValueError(f"{self.kind} takes no modulus")
        else:
            raise ValueError(f"unknown coefficient kind {self.kind!r}")

    @property
    def is_field(self):
        return self.kind != "Z"

    @property
    def is_finite(self):
        return self.kind == "Fp"

    def __call__(self, x):
        if self.kind == "Fp":
            return int(x) % self.p
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def inv(self, x):
        if self.kind == "Fp":
            if x % self.p == 0:
                raise ZeroDivisionError("0 has no inverse")
            return pow(int(x), -1, self.p)
        if self.kind == "Q":
            return 1 / Fraction(x)
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")

    def elements(self):
        if self.kind != "Fp":
            raise ValueError("only finite fields can be enumerated")
        return range(self.p)

    def __str__(self):
        return f"F_{self.p}" if self.kind == "Fp" else self.kind

    def to_json(self):
        return {"kind": self.kind, "p": self.p} if self.kind == "Fp" else {"kind": self.kind}

    @staticmethod
    def from_json(doc):
        return Coefficient(doc["kind"], doc.get("p", 0) or 0)

    def encode(self, x):
        """Canonical JSON encoding of one entry."""
        if self.kind == "Fp":
            return int(x)
        return str(x)

    def decode(self, s):
        if self.kind == "Q":
            return Fraction(s)
        return self(int(s))


def F(p):
    return Coefficient("Fp", p)


QQ = Coefficient("Q")
ZZ = Coefficient("Z")


class Mat:
    """Immutable dense matrix over a ``Coefficient``."""

    __slots__ = ("K", "rows", "nrows", "ncols", "_hash")

    def __init__(self, K, rows, ncols=None):
        rows = tuple(tuple(K(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def _raw(cls, K, rows, ncols):
        m = object.__new__(cls)
        object.__setattr__(m, "K", K)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "_hash", None)
        return m

    @classmethod
    def zeros(cls, K, m, n):
        zero = K(0)
        return cls._raw(K, tuple((zero,) * n for _ in range(m)), n)

    @classmethod
    def identity(cls, K, n):
        return cls._raw(K, tuple(tuple(K(1 if i == j else 0) for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, K, cols, nrows):
        cols = list(cols)
        return cls(K, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.K == other.K and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.K, self.ncols, self.rows)))
        return self._hash

    def __repr__(self):
        return f"Mat({self.K}, {[list(r) for r in self.rows]}, ncols={self.ncols})"

    def _check(self, other):
        if self.K != other.K:
            raise ValueError(f"coefficient mismatch: {self.K} vs {other.K}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        K = self.K
        return Mat._raw(K, tuple(tuple(K(a + b) for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self):
        K = self.K
        return Mat._raw(K, tuple(tuple(K(-a) for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        K = self.K
        c = K(c)
        return Mat._raw(K, tuple(tuple(K(c * a) for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        K = self.K
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            out.append(tuple(K(sum(a * b for a, b in zip(r, c) if a and b)) for c in cols))
        return Mat._raw(K, tuple(out), other.ncols)

    def apply(self, v):
        K = self.K
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(K(sum(a * b for a, b in zip(r, v) if a and b)) for r in self.rows)

    @property
    def T(self):
        return Mat._raw(self.K, tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)),
                        self.nrows)

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return Mat(self.K, rows, self.ncols)

    def submatrix(self, row_idx, col_idx):
        return Mat._raw(self.K, tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx),
                        len(col_idx))

    def to_list(self):
        return [list(r) for r in self.rows]


def hstack(mats, K=None, nrows=None):
    mats = list(mats)
    if not mats:
        return Mat.zeros(K, nrows, 0)
    K = mats[0].K
    m = mats[0].nrows
    for a in mats:
        if a.nrows != m:
            raise ValueError("hstack row mismatch")
    return Mat._raw(K, tuple(tuple(itertools.chain.from_iterable(a.rows[i] for a in mats))
                             for i in range(m)), sum(a.ncols for a in mats))


def vstack(mats, K=None, ncols=None):
    mats = list(mats)
    if not mats:
        return Mat.zeros(K, 0, ncols)
    n = mats[0].ncols
    for a in mats:
        if a.ncols != n:
            raise ValueError("vstack column mismatch")
    return Mat._raw(mats[0].K, tuple(itertools.chain.from_iterable(a.rows for a in mats)), n)


def block(K, blocks, row_dims, col_dims):
    """Assemble a block matrix; ``None`` entries are zero blocks."""
    rows = []
    for bi, m in enumerate(row_dims):
        parts = []
        for bj, n in enumerate(col_dims):
            b = blocks[bi][bj]
            if b is None:
                b = Mat.zeros(K, m, n)
            elif b.shape != (m, n):
                raise ValueError(f"block ({bi},{bj}) has shape {b.shape}, expected {(m, n)}")
            parts.append(b)
        rows.append(hstack(parts, K, m))
    return vstack(rows, K, sum(col_dims))


def block_diag(K, mats):
    mats = list(mats)
    return block(K, [[a if i == j else None for j, a in enumerate(mats)] for i in range(len(mats))],
                 [a.nrows for a in mats], [a.ncols for a in mats])


def kron(a, b):
    a._check(b)
    K = a.K
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(K(x * y) for x in ra for y in rb))
    return Mat._raw(K, tuple(rows), a.ncols * b.ncols)


# --- row reduction over a field ---------------------------------------------

def rref(A):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    K = A.K
    if not K.is_field:
        raise ValueError("rref needs a field")
    M = [list(r) for r in A.rows]
    pivots = []
    r = 0
    for c in range(A.ncols):
        if r >= len(M):
            break
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = K.inv(M[r][c])
        M[r] = [K(x * inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [K(x - f * y) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return Mat._raw(K, tuple(tuple(row) for row in M), A.ncols), tuple(pivots)


def rank(A):
    if A.K.kind == "Z":
        return sum(1 for d in smith_diagonal(A) if d)
    return len(rref(A)[1])


def kernel_basis(A):
    """Basis of ker A as a list of column vectors (tuples).

    Free columns are the non-pivot columns of rref(A) in increasing order; the
    basis vector for a free column has a 1 there and 0 in the other free slots.
    """
    K = A.K
    R, piv = rref(A)
    pivset = set(piv)
    basis = []
    for f in range(A.ncols):
        if f in pivset:
            continue
        v = [K(0)] * A.ncols
        v[f] = K(1)
        for row, pc in enumerate(piv):
            v[pc] = K(-R.rows[row][f])
        basis.append(tuple(v))
    return basis


def kernel_matrix(A):
    """Columns form a basis of ker A."""
    return Mat.from_columns(A.K, kernel_basis(A), A.ncols)


def image_basis(A):
    """Basis of the column space: the pivot columns of A (leftmost first)."""
    _, piv = rref(A)
    return [A.column(j) for j in piv]


def solve(A, b):
    """Lexicographically least solution x of A x = b, or None.

    Columns are reduced right-to-left, so every pivot variable is determined by
    free variables of smaller index; setting each free variable to 0 is then
    the greedy lexicographic minimum (0 < 1 < ... < p-1 on residues).
    """
    K = A.K
    n = A.ncols
    if len(b) != A.nrows:
        raise ValueError("right-hand side length mismatch")
    rev = Mat._raw(K, tuple(tuple(reversed(r)) + (K(bi),) for r, bi in zip(A.rows, b)), n + 1)
    R, piv = rref(rev)
    if n in piv:
        return None
    x = [K(0)] * n
    for row, pc in enumerate(piv):
        x[n - 1 - pc] = R.rows[row][n]
    return tuple(x)


def solve_matrix(A, B):
    """Solve A X = B column by column; None if any column is infeasible."""
    cols = []
    for c in B.columns():
        x = solve(A, c)
        if x is None:
            return None
        cols.append(x)
    return Mat.from_columns(A.K, cols, A.ncols)


def is_invertible(A):
    return A.nrows == A.ncols and rank(A) == A.nrows


def inverse(A):
    if not is_invertible(A):
        raise ValueError("matrix is not invertible")
    return solve_matrix(A, Mat.identity(A.K, A.nrows))


def in_span(vectors, v, K, dim):
    """True iff v lies in the span of the given vectors."""
    A = Mat.from_columns(K, vectors, dim)
    return solve(A, v) is not None


# --- integers ----------------------------------------------------------------

def smith_diagonal(A):
    """Diagonal of the Smith normal form of an integer matrix (nonnegative)."""
    M = [list(r) for r in A.rows]
    m, n = A.nrows, A.ncols
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    for row in M:
                        row[j] -= q * row[t]
                    if M[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if M[i][j] % M[t][t]), None)
                if bad is None:
                    break
                M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
                continue
            nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if M[i][j] and (i == t or j == t)]
            _, pi, pj = min(nz)
            M[t], M[pi] = M[pi], M[t]
            for row in M:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag + [0] * (min(m, n) - len(diag))


def vector_space(K, dim):
    """All vectors of K^dim in lexicographic order (finite fields only)."""
    return itertools.product(K.elements(), repeat=dim)
