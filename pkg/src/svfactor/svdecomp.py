"""Decomposition of square matrices into constant-sum (S) and vertex-cross-sum (V) parts.

Orientation convention used everywhere in the package: ``a`` comes from the
row sums, ``b`` from the column sums, and the V part is ``a 1^T + 1 b^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DimensionError, Matrix, Vector, require_square


@dataclass(frozen=True)
class SVParts:
    """``M = a 1^T + 1 b^T + m0 + weight * E_n``."""

    a: Vector
    b: Vector
    m0: Matrix
    weight: Fraction

    @property
    def n(self) -> int:
        return self.a.dim

    @property
    def v_part(self) -> Matrix:
        return v_from_vectors(self.a, self.b)

    @property
    def s_part(self) -> Matrix:
        return self.m0 + Matrix.ones(self.n) * self.weight


def weight(m: Matrix) -> Fraction:
    """Mean of all entries of a square matrix."""
    require_square(m)
    n = m.rows
    return m.total() / (n * n)


def decompose(m: Matrix) -> SVParts:
    require_square(m)
    n = m.rows
    wt = weight(m)
    a = Vector(s / n - wt for s in m.row_sums())
    b = Vector(s / n - wt for s in m.col_sums())
    m0 = Matrix._raw(
        tuple(
            tuple(m[i, j] - a[i] - b[j] - wt for j in range(n))
            for i in range(n)
        )
    )
    return SVParts(a=a, b=b, m0=m0, weight=wt)


def recompose(p: SVParts) -> Matrix:
    n = p.a.dim
    if p.b.dim != n or p.m0.shape != (n, n):
        raise DimensionError(f"inconsistent parts: a{p.a.dim}, b{p.b.dim}, m0{p.m0.shape}")
    if p.a.total() != 0 or p.b.total() != 0:
        raise ValueError("a and b must be orthogonal to the ones vector")
    if any(s != 0 for s in p.m0.row_sums()) or any(s != 0 for s in p.m0.col_sums()):
        raise ValueError("m0 must have zero row and column sums")
    return v_from_vectors(p.a, p.b) + p.m0 + Matrix.ones(n) * p.weight


def is_type_s(m: Matrix) -> Fraction | None:
    """Return the weight if all row and column sums agree, else None."""
    require_square(m)
    n = m.rows
    if n == 0:
        return None
    sums = set(m.row_sums()) | set(m.col_sums())
    if len(sums) != 1:
        return None
    return sums.pop() / n


def is_type_v(m: Matrix) -> bool:
    require_square(m)
    n = m.rows
    if m.total() != 0:
        return False
    # the cross-sum condition for all (i,j,k,l) reduces to pivoting on row 0 / column 0
    for i in range(1, n):
        for j in range(1, n):
            if m[i, j] + m[0, 0] != m[i, 0] + m[0, j]:
                return False
    return True


def v_from_vectors(a: Vector, b: Vector) -> Matrix:
    if a.dim != b.dim:
        raise DimensionError(f"a has dim {a.dim}, b has dim {b.dim}")
    if a.total() != 0 or b.total() != 0:
        raise ValueError("a and b must be orthogonal to the ones vector")
    return Matrix._raw(tuple(tuple(ai + bj for bj in b) for ai in a))


def v_char_poly(a: Vector, b: Vector) -> list[Fraction]:
    """Characteristic polynomial of ``a 1^T + 1 b^T``, highest degree first.

    The nonzero spectrum lives on span(a, 1), giving t^(n-2) (t^2 - n b.a).
    """
    n = a.dim
    if n < 2:
        raise ValueError("characteristic polynomial formula needs n >= 2")
    if b.dim != n:
        raise DimensionError(f"a has dim {a.dim}, b has dim {b.dim}")
    if a.total() != 0 or b.total() != 0:
        raise ValueError("a and b must be orthogonal to the ones vector")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] = Fraction(1)
    coeffs[2] = -n * b.dot(a)
    return coeffs


def frobenius_inner(a: Matrix, b: Matrix) -> Fraction:
    """tr(A^T B), i.e. the entrywise dot product."""
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return sum((x * y for x, y in zip(a.entries, b.entries)), Fraction(0))

