"""Exact rational matrices and vectors.

Every scalar is a :class:`fractions.Fraction`; nothing here ever touches a
float.  Matrices and vectors are immutable and hashable so they can be used
as dictionary keys when deduplicating factors.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence, Union

ScalarLike = Union[int, Fraction, str]


class DimensionError(ValueError):
    """Raised when operand shapes do not fit the requested operation."""


def scalar(value: ScalarLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a normalised Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a matrix scalar")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_scalar(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Vector:
    __slots__ = ("_e",)

    def __init__(self, entries: Iterable[ScalarLike]):
        self._e = tuple(scalar(v) for v in entries)

    @classmethod
    def ones(cls, n: int) -> "Vector":
        return cls([1] * n)

    @classmethod
    def zeros(cls, n: int) -> "Vector":
        return cls([0] * n)

    @property
    def dim(self) -> int:
        return len(self._e)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._e

    def __len__(self) -> int:
        return len(self._e)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._e)

    def __getitem__(self, i: int) -> Fraction:
        return self._e[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Vector):
            return self._e == other._e
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Vector", self._e))

    def __repr__(self) -> str:
        return "Vector([" + ", ".join(format_scalar(v) for v in self._e) + "])"

    def _check(self, other: "Vector") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"vector dims differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(a + b for a, b in zip(self._e, other._e))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(a - b for a, b in zip(self._e, other._e))

    def __neg__(self) -> "Vector":
        return Vector(-a for a in self._e)

    def __mul__(self, k: ScalarLike) -> "Vector":
        k = scalar(k)
        return Vector(k * a for a in self._e)

    __rmul__ = __mul__

    def dot(self, other: "Vector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self._e, other._e)), Fraction(0))

    def total(self) -> Fraction:
        return sum(self._e, Fraction(0))

    def outer(self, other: "Vector") -> "Matrix":
        return Matrix([[a * b for b in other._e] for a in self._e])

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._e)


class Matrix:
    """Dense immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, data: Iterable[Iterable[ScalarLike]]):
        e = tuple(tuple(scalar(v) for v in row) for row in data)
        cols = len(e[0]) if e else 0
        if any(len(r) != cols for r in e):
            raise DimensionError("ragged matrix rows")
        self._e = e
        self.rows = len(e)
        self.cols = cols

    @classmethod
    def _raw(cls, e: tuple[tuple[Fraction, ...], ...]) -> "Matrix":
        # trusted constructor: caller guarantees Fraction entries and rectangular shape
        m = cls.__new__(cls)
        m._e = e
        m.rows = len(e)
        m.cols = len(e[0]) if e else 0
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        return cls([[0] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def ones(cls, n: int) -> "Matrix":
        """The all-ones matrix (1_n 1_n^T)."""
        return cls([[1] * n for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence[ScalarLike]) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        return cls(zip(*columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def n(self) -> int:
        require_square(self)
        return self.rows

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(itertools.chain.from_iterable(self._e))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._e]

    def row(self, i: int) -> Vector:
        return Vector(self._e[i])

    def col(self, j: int) -> Vector:
        return Vector(r[j] for r in self._e)

    def row_tuples(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._e

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._e[i][j]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Matrix):
            return self._e == other._e
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Matrix", self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(v) for v in r) for r in self._e)
        return f"Matrix([{body}])"

    def __str__(self) -> str:
        cells = [[format_scalar(v) for v in r] for r in self._e]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e))
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._e))

    def __mul__(self, k: ScalarLike) -> "Matrix":
        k = scalar(k)
        return Matrix._raw(tuple(tuple(k * a for a in r) for r in self._e))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix | Vector"):
        if isinstance(other, Vector):
            if other.dim != self.cols:
                raise DimensionError(f"cannot apply {self.shape} matrix to vector of dim {other.dim}")
            return Vector(sum((a * b for a, b in zip(r, other)), Fraction(0)) for r in self._e)
        return mat_mul(self, other)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._e)) if self._e else ())

    def trace(self) -> Fraction:
        require_square(self)
        return sum((self._e[i][i] for i in range(self.rows)), Fraction(0))

    def total(self) -> Fraction:
        return sum(itertools.chain.from_iterable(self._e), Fraction(0))

    def row_sums(self) -> Vector:
        return Vector(sum(r, Fraction(0)) for r in self._e)

    def col_sums(self) -> Vector:
        return Vector(sum(c, Fraction(0)) for c in zip(*self._e))

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self._e for v in r)

    def minor(self, i: int, j: int) -> "Matrix":
        """Submatrix with row ``i`` and column ``j`` deleted."""
        return Matrix._raw(
            tuple(r[:j] + r[j + 1:] for k, r in enumerate(self._e) if k != i)
        )

    def denominator_lcm(self) -> int:
        d = 1
        for r in self._e:
            for v in r:
                d = math.lcm(d, v.denominator)
        return d


def require_square(m: Matrix) -> None:
    if not m.is_square:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bt = tuple(zip(*b.row_tuples()))
    zero = Fraction(0)
    return Matrix._raw(
        tuple(
            tuple(sum((x * y for x, y in zip(r, c)), zero) for c in bt)
            for r in a.row_tuples()
        )
    )


def _integer_rows(m: Matrix) -> tuple[list[list[int]], int]:
    """Clear denominators row by row; returns (int rows, product of row scales)."""
    rows, scale = [], 1
    for r in m.row_tuples():
        d = 1
        for v in r:
            d = math.lcm(d, v.denominator)
        rows.append([int(v * d) for v in r])
        scale *= d
    return rows, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """In-place fraction-free elimination; returns (det sign-corrected, rank)."""
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    sign, prev, rank = 1, 1, 0
    col = 0
    while rank < n_rows and col < n_cols:
        piv = next((i for i in range(rank, n_rows) if a[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        p = a[rank][col]
        for i in range(rank + 1, n_rows):
            ai = a[i]
            f = ai[col]
            for j in range(col + 1, n_cols):
                # exact division is the Bareiss invariant
                ai[j] = (p * ai[j] - f * a[rank][j]) // prev
            ai[col] = 0
        prev = p
        rank += 1
        col += 1
    det = sign * prev if rank == n_rows == n_cols else 0
    return det, rank


def det(m: Matrix) -> Fraction:
    """Exact determinant via Bareiss elimination on a denominator-cleared copy."""
    require_square(m)
    if m.rows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(m)
    d, _ = _bareiss(rows)
    return Fraction(d, scale)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _integer_rows(m)
    return _bareiss(rows)[1]


def adjugate(m: Matrix) -> Matrix:
    """Transpose of the cofactor matrix, built from (n-1)x(n-1) minors."""
    require_square(m)
    n = m.rows
    if n == 1:
        return Matrix.identity(1)
    cof = [[(-1) ** (i + j) * det(m.minor(j, i)) for j in range(n)] for i in range(n)]
    return Matrix._raw(tuple(tuple(r) for r in cof))


def is_psd(m: Matrix) -> bool:
    """Positive semidefiniteness of a symmetric matrix by principal minors."""
    require_square(m)
    if not m.is_symmetric():
        raise ValueError("PSD test needs a symmetric matrix")
    n = m.rows
    e = m.row_tuples()
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            sub = Matrix._raw(tuple(tuple(e[i][j] for j in idx) for i in idx))
            if det(sub) < 0:
                return False
    return True


def charpoly(m: Matrix) -> list[Fraction]:
    """Coefficients of det(t I - M), highest degree first (Berkowitz, division free)."""
    require_square(m)
    n = m.rows
    a = m.tolist()
    # Berkowitz: build the product of Toeplitz matrices column by column
    poly = [Fraction(1), -a[0][0]] if n else [Fraction(1)]
    for r in range(1, n):
        # leading principal (r+1)x(r+1): split into A (r x r), R (row), C (col), d
        big_a = [row[:r] for row in a[:r]]
        row_r = a[r][:r]
        col_c = [a[i][r] for i in range(r)]
        d = a[r][r]
        # Toeplitz column: 1, -d, -R C, -R A C, -R A^2 C, ...
        t = [Fraction(1), -d]
        v = col_c
        for _ in range(r):
            t.append(-sum((x * y for x, y in zip(row_r, v)), Fraction(0)))
            v = [sum((big_a[i][j] * v[j] for j in range(r)), Fraction(0)) for i in range(r)]
        # multiply the (r+2) x (r+1) lower-triangular Toeplitz by poly
        poly = [
            sum((t[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(t)), Fraction(0))
            for i in range(r + 2)
        ]
    return poly
