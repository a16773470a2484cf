"""Exact dense linear algebra over the rationals or a prime field GF(p).

Scalars are `fractions.Fraction` over the rationals and plain python ints
in [0, p) over GF(p).  All results are exact; there are no tolerances
anywhere.  Over a prime field the elimination routines run vectorised on
int64 numpy arrays (p**2 and row-length sums stay far below 2**63 at the
matrix sizes this package handles); over the rationals they run on
Fraction entries.

Maps act on column vectors: `solve(m, b)` finds x with m @ x = b, and the
composite "first f, then g" has matrix g @ f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class LinalgError(Exception):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field of rational numbers, scalars are Fraction."""

    kind = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def scalar_from_str(self, s: str):
        return Fraction(s)

    def scalar_to_str(self, x) -> str:
        return str(x)

    def name(self) -> str:
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """GF(p) for a prime p, scalars are ints reduced into [0, p)."""

    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise LinalgError(f"{p} is not prime")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def scalar_from_str(self, s: str):
        return int(s) % self.p

    def scalar_to_str(self, x) -> str:
        return str(x)

    def name(self) -> str:
        return f"gf({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def field_from_name(text: str):
    """Parse a field name: ``rational`` or ``gf(<p>)``."""
    text = text.strip().lower()
    if text == "rational":
        return RationalField()
    if text.startswith("gf(") and text.endswith(")"):
        return PrimeField(int(text[3:-1]))
    raise LinalgError(f"unknown field {text!r}")


class Matrix:
    """A dense matrix over a fixed field; data is a list of row lists."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data, rows=None, cols=None):
        self.field = field
        self.data = [list(row) for row in data]
        self.rows = len(self.data) if rows is None else rows
        self.cols = (len(self.data[0]) if self.data else 0) if cols is None else cols
        for row in self.data:
            if len(row) != self.cols:
                raise LinalgError("ragged matrix data")

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero()
        return cls(field, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def from_int_rows(cls, field, rows):
        return cls(field, [[field.from_int(x) for x in row] for row in rows])

    @classmethod
    def from_columns(cls, field, columns, rows):
        m = cls.zeros(field, rows, len(columns))
        for j, col in enumerate(columns):
            for i in range(rows):
                m.data[i][j] = col[i]
        return m

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def copy(self):
        return Matrix(self.field, self.data, self.rows, self.cols)

    def transpose(self):
        t = Matrix.zeros(self.field, self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                t.data[j][i] = self.data[i][j]
        return t

    def is_zero(self):
        z = self.field.zero()
        return all(x == z for row in self.data for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field.name()})"

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise LinalgError("vector length mismatch")
        f = self.field
        if f.kind == "prime" and self.rows * self.cols > 64:
            a = np.array(self.data, dtype=np.int64).reshape(self.rows, self.cols)
            v = np.array(vec, dtype=np.int64)
            return [int(x) for x in (a @ v) % f.p]
        out = []
        z = f.zero()
        for i in range(self.rows):
            acc = z
            row = self.data[i]
            for j, x in enumerate(vec):
                if x != z and row[j] != z:
                    acc = f.add(acc, f.mul(row[j], x))
            out.append(acc)
        return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise LinalgError(f"shape mismatch {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    f = a.field
    if f.kind == "prime" and a.rows * b.cols * a.cols > 64:
        am = np.array(a.data, dtype=np.int64).reshape(a.rows, a.cols)
        bm = np.array(b.data, dtype=np.int64).reshape(b.rows, b.cols)
        cm = (am @ bm) % f.p
        return Matrix(f, [[int(x) for x in row] for row in cm.reshape(a.rows, b.cols)], a.rows, b.cols)
    out = Matrix.zeros(f, a.rows, b.cols)
    z = f.zero()
    for i in range(a.rows):
        arow = a.data[i]
        orow = out.data[i]
        for k in range(a.cols):
            x = arow[k]
            if x == z:
                continue
            brow = b.data[k]
            for j in range(b.cols):
                y = brow[j]
                if y != z:
                    orow[j] = f.add(orow[j], f.mul(x, y))
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise LinalgError("shape mismatch in addition")
    f = a.field
    return Matrix(f, [[f.add(a.data[i][j], b.data[i][j]) for j in range(a.cols)]
                      for i in range(a.rows)], a.rows, a.cols)


def mat_scale(c, m: Matrix) -> Matrix:
    f = m.field
    return Matrix(f, [[f.mul(c, x) for x in row] for row in m.data],
                  m.rows, m.cols)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != b.rows:
        raise LinalgError("row count mismatch")
    return Matrix(a.field, [a.data[i] + b.data[i] for i in range(a.rows)], a.rows, a.cols + b.cols)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.cols:
        raise LinalgError("column count mismatch")
    return Matrix(a.field, a.data + b.data, a.rows + b.rows, a.cols)


@dataclass
class RrefResult:
    reduced: Matrix
    rank: int
    pivot_columns: list


def _rref_prime(data, rows, cols, p):
    a = np.array(data, dtype=np.int64).reshape(rows, cols) % p
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in a], pivots


def _rref_generic(data, rows, cols, f):
    a = [list(row) for row in data]
    z = f.zero()
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = None
        for i in range(r, rows):
            if a[i][c] != z:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = f.inv(a[r][c])
        if inv != f.one():
            a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != z:
                factor = a[i][c]
                arow = a[r]
                a[i] = [f.sub(a[i][j], f.mul(factor, arow[j])) for j in range(cols)]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> RrefResult:
    """Reduced row-echelon form; returns (reduced, rank, pivot columns)."""
    if m.rows == 0 or m.cols == 0:
        return RrefResult(m.copy(), 0, [])
    if m.field.kind == "prime":
        data, pivots = _rref_prime(m.data, m.rows, m.cols, m.field.p)
    else:
        data, pivots = _rref_generic(m.data, m.rows, m.cols, m.field)
    return RrefResult(Matrix(m.field, data, m.rows, m.cols), len(pivots), pivots)


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> list:
    """Column vectors spanning the null space of m (cols - rank of them)."""
    f = m.field
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [
            [f.one() if i == j else f.zero() for i in range(m.cols)]
            for j in range(m.cols)
        ]
    res = rref(m)
    pivots = res.pivot_columns
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    z = f.zero()
    for fc in free:
        v = [z] * m.cols
        v[fc] = f.one()
        for r, pc in enumerate(pivots):
            entry = res.reduced.data[r][fc]
            if entry != z:
                v[pc] = f.neg(entry)
        basis.append(v)
    return basis


def solve(m: Matrix, b: list):
    """A solution x of m @ x = b with free variables set to 0, or None."""
    if len(b) != m.rows:
        raise LinalgError("right-hand side length mismatch")
    f = m.field
    aug = Matrix(f, [m.data[i] + [b[i]] for i in range(m.rows)], m.rows, m.cols + 1)
    res = rref(aug)
    if m.cols in res.pivot_columns:
        return None
    z = f.zero()
    x = [z] * m.cols
    for r, pc in enumerate(res.pivot_columns):
        x[pc] = res.reduced.data[r][m.cols]
    return x


def row_space_matrix(vectors, ncols, field) -> Matrix:
    """Stack vectors as rows (empty-safe)."""
    return Matrix(field, [list(v) for v in vectors], len(vectors), ncols)


def span_rank(vectors, ncols, field) -> int:
    if not vectors:
        return 0
    return rref(row_space_matrix(vectors, ncols, field)).rank


def in_span(vectors, target, ncols, field) -> bool:
    """Is target in the row span of vectors?"""
    base = span_rank(vectors, ncols, field)
    return span_rank(list(vectors) + [target], ncols, field) == base


def span_basis(vectors, ncols, field):
    """Rref basis of the row span of the given vectors."""
    if not vectors:
        return []
    res = rref(row_space_matrix(vectors, ncols, field))
    return [res.reduced.data[i] for i in range(res.rank)]


def complement_pivots(sub_vectors, all_vectors, ncols, field):
    """Indices into all_vectors extending a basis of the span of sub_vectors.

    Greedy in order: an index is kept when its vector increases the rank of
    sub_vectors plus the vectors kept so far.
    """
    kept = []
    current = list(sub_vectors)
    r = span_rank(current, ncols, field)
    for idx, v in enumerate(all_vectors):
        cand = current + [v]
        r2 = span_rank(cand, ncols, field)
        if r2 > r:
            kept.append(idx)
            current = cand
            r = r2
    return kept


class SpanTracker:
    """Incrementally grown row span with O(1) membership after each add.

    Keeps rows in reduced echelon form; `add` returns True when the vector
    enlarged the span.
    """

    def __init__(self, ncols, field):
        self.ncols = ncols
        self.field = field
        self.rows = []  # kept in echelon form, pivot map: col -> row index
        self.pivot_of_col = {}

    def reduce(self, vec):
        f = self.field
        z = f.zero()
        v = list(vec)
        for c, ri in sorted(self.pivot_of_col.items()):
            if v[c] != z:
                factor = v[c]
                row = self.rows[ri]
                v = [f.sub(v[j], f.mul(factor, row[j])) for j in range(self.ncols)]
        return v

    def contains(self, vec):
        z = self.field.zero()
        return all(x == z for x in self.reduce(vec))

    def add(self, vec) -> bool:
        f = self.field
        z = f.zero()
        v = self.reduce(vec)
        pivot = None
        for j in range(self.ncols):
            if v[j] != z:
                pivot = j
                break
        if pivot is None:
            return False
        inv = f.inv(v[pivot])
        if inv != f.one():
            v = [f.mul(inv, x) for x in v]
        # back-substitute into existing rows to stay fully reduced
        for ri, row in enumerate(self.rows):
            if row[pivot] != z:
                factor = row[pivot]
                self.rows[ri] = [f.sub(row[j], f.mul(factor, v[j])) for j in range(self.ncols)]
        self.pivot_of_col[pivot] = len(self.rows)
        self.rows.append(v)
        return True

    @property
    def dim(self):
        return len(self.rows)
