"""Exact rational linear algebra: based spaces, dense matrices, ranks, kernels.

Scalars are ``fractions.Fraction`` values, i.e. arbitrary-precision rationals
kept in lowest terms with positive denominator, so every computation in the
package is exact.  Rank is computed by fraction-free (Bareiss) elimination,
which keeps intermediate values integral when the input is integral and never
rounds in any case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import SchemaError, ShapeError

# The scalar field: exact rationals of characteristic zero.
Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise SchemaError(f"cannot interpret {value!r} as an exact rational")


def parse_scalar(text: str) -> Fraction:
    """Parse "p/q" (or "p" when q=1); rejects floats and empty input."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {text!r}") from exc
    return value


def format_scalar(value: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


@dataclass(frozen=True)
class Space:
    """A based finite-dimensional vector space with named basis elements."""

    dimension: int
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise SchemaError("space dimension must be >= 1")
        if len(self.labels) != self.dimension:
            raise SchemaError("label count must equal the dimension")
        if len(set(self.labels)) != self.dimension:
            raise SchemaError("basis labels must be distinct")

    @staticmethod
    def of_dim(dimension: int, labels=None) -> "Space":
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(dimension))
        return Space(dimension, tuple(labels))

    def basis_vector(self, index: int) -> tuple[Fraction, ...]:
        return tuple(ONE if i == index else ZERO for i in range(self.dimension))


@dataclass(frozen=True)
class Matrix:
    """Dense matrix of exact rationals, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError("entry count must equal rows*cols")

    @staticmethod
    def from_rows(rows) -> "Matrix":
        rows = [list(map(as_scalar, row)) for row in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        if any(len(row) != n_cols for row in rows):
            raise ShapeError("ragged rows")
        return Matrix(n_rows, n_cols, tuple(x for row in rows for x in row))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, (ZERO,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(ONE if i == j else ZERO
                                  for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.entry(i, j)
                            for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __mul__(self, other: "Matrix") -> "Matrix":
        return compose(self, other)


def compose(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product a*b."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    b_cols = [tuple(b.entry(k, j) for k in range(b.rows)) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        row = a.row(i)
        for col in b_cols:
            out.append(sum((x * y for x, y in zip(row, col) if x and y), ZERO))
    return Matrix(a.rows, b.cols, tuple(out))


def _integer_rows(m: Matrix) -> list[list[int]]:
    # Scaling each row by the lcm of its denominators preserves the row space.
    rows = []
    for i in range(m.rows):
        row = m.row(i)
        scale = 1
        for x in row:
            d = x.denominator
            scale = scale * d // gcd(scale, d)
        rows.append([int(x * scale) for x in row])
    return rows


def rank(m: Matrix) -> int:
    """Exact rank over the rationals via fraction-free Bareiss elimination."""
    a = _integer_rows(m)
    n_rows, n_cols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, n_rows):
            row_i, row_r = a[i], a[r]
            head = row_i[c]
            for j in range(c + 1, n_cols):
                num = row_r[c] * row_i[j] - head * row_r[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
            row_i[c] = 0
        prev = a[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def kernel_dim(m: Matrix) -> int:
    """Dimension of the right kernel: cols - rank."""
    return m.cols - rank(m)


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (plain rational Gauss-Jordan) and pivot columns."""
    a = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        pivot = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """A basis of the right kernel {v : m v = 0}, one vector per free column."""
    a, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(tuple(v))
    return basis
