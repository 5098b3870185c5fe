"""Exact linear algebra over the integers and the rationals.

Everything here works on Python ints and :class:`fractions.Fraction`, so there
is no overflow and no rounding.  Matrices are small (desk scale, up to roughly
100 x 100) and the algorithms are the classical elimination ones.

>>> smith_normal_form([[2, 0], [0, 3]]).d
(1, 6)
>>> signature([[0, 1], [1, 0]])
(1, 1, 0)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidModulus, NonSymmetric, Singular, require_int


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")
        for x in self.entries:
            if isinstance(x, bool) or not isinstance(x, int):
                raise DimensionMismatch(f"matrix entry {x!r} is not an integer")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Iterable[int], rows: int | None = None,
                 cols: int | None = None) -> "IntegerMatrix":
        values = list(values)
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(values):
            out[i][i] = x
        return cls.from_rows(out, cols)

    @classmethod
    def block_diagonal(cls, blocks: Iterable["IntegerMatrix"]) -> "IntegerMatrix":
        blocks = [as_integer_matrix(b) for b in blocks]
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, cols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows,
                             tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        other = as_integer_matrix(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        return IntegerMatrix(self.rows, other.cols, tuple(
            sum(a * b for a, b in zip(self.row(i), c)) for i in range(self.rows) for c in cols))

    def apply(self, x: Sequence[int]) -> tuple:
        """Matrix-vector product."""
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), x)) for i in range(self.rows))

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})" if self.rows else \
            f"IntegerMatrix.zeros(0, {self.cols})"


def as_integer_matrix(m, cols: int | None = None) -> IntegerMatrix:
    if isinstance(m, IntegerMatrix):
        return m
    return IntegerMatrix.from_rows(m, cols)


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable matrix of reduced fractions (``Fraction`` normalizes on creation)."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def __matmul__(self, other) -> "RationalMatrix":
        if isinstance(other, IntegerMatrix):
            other = RationalMatrix(other.rows, other.cols, other.entries)
        if self.cols != other.rows:
            raise DimensionMismatch("shape mismatch")
        return RationalMatrix(self.rows, other.cols, tuple(
            sum((self[i, t] * other[t, j] for t in range(self.cols)), Fraction(0))
            for i in range(self.rows) for j in range(other.cols)))


@dataclass(frozen=True)
class SnfResult:
    """``u @ m @ v == diag(d)`` (padded with zeros to the shape of ``m``)."""

    d: tuple
    u: IntegerMatrix
    v: IntegerMatrix
    rank: int

    @property
    def nontrivial(self) -> tuple:
        """Divisors other than 1 and 0: the torsion coefficients of the cokernel."""
        return tuple(x for x in self.d[:self.rank] if x != 1)


def smith_normal_form(m) -> SnfResult:
    """Smith normal form by elementary row and column operations.

    The pivot is always the entry of least absolute value in the active block,
    and the unimodular transforms are accumulated alongside.
    """
    m = as_integer_matrix(m)
    nr, nc = m.rows, m.cols
    a = m.tolist()
    u = IntegerMatrix.identity(nr).tolist()
    v = IntegerMatrix.identity(nc).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):  # col dst += f * col src
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, None) for i in range(t + 1, nr) if a[i][t]]
            rest += [(abs(a[t][j]), None, j) for j in range(t + 1, nc) if a[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    d = tuple(a[i][i] for i in range(min(nr, nc)))
    return SnfResult(d=d, u=IntegerMatrix.from_rows(u, nr), v=IntegerMatrix.from_rows(v, nc),
                     rank=sum(1 for x in d if x))


def determinant(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = as_integer_matrix(m)
    if not m.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def signature(s) -> tuple:
    """Inertia ``(n_plus, n_minus, n_zero)`` of a symmetric integer matrix.

    Computed by congruence diagonalization over the rationals, so the counts
    are exact (Sylvester's law of inertia).
    """
    s = as_integer_matrix(s)
    if not s.is_symmetric():
        raise NonSymmetric("signature needs a symmetric matrix")
    n = s.rows
    a = [[Fraction(x) for x in row] for row in s.tolist()]
    diag = []
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if off is None:
                diag.extend([Fraction(0)] * (n - k))
                break
            i, j = off
            # row/col i += row/col j makes the (i, i) entry 2*a[i][j] != 0
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for row in a:
                row[i] += row[j]
            piv = i
        a[k], a[piv] = a[piv], a[k]
        for row in a:
            row[k], row[piv] = row[piv], row[k]
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] -= f * row[k]
        diag.append(p)
        k += 1
    return (sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0),
            sum(1 for x in diag if x == 0))


def signature_value(s) -> int:
    """``n_plus - n_minus``."""
    plus, minus, _ = signature(s)
    return plus - minus


def rational_inverse(s) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    s = as_integer_matrix(s)
    if not s.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = s.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(s.tolist())]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise Singular("matrix has zero determinant")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RationalMatrix(n, n, tuple(x for row in a for x in row[n:]))


def integer_inverse(m) -> IntegerMatrix:
    """Inverse of a unimodular matrix."""
    inv = rational_inverse(m)
    if any(x.denominator != 1 for x in inv.entries):
        raise Singular("matrix is not unimodular")
    return IntegerMatrix(inv.rows, inv.cols, tuple(int(x) for x in inv.entries))


def solution_count_mod_n(m, n: int) -> int:
    """Number of ``x`` in ``(Z_n)^cols`` with ``m x = 0 (mod n)``.

    Read off the Smith form: each nonzero divisor ``d`` contributes
    ``gcd(d, n)`` solutions and each free column contributes ``n``.
    """
    require_int(n, "modulus", 1, InvalidModulus)
    m = as_integer_matrix(m)
    snf = smith_normal_form(m)
    return n ** (m.cols - snf.rank) * prod(gcd(x, n) for x in snf.d[:snf.rank])
