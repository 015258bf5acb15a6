"""Exact enumeration of integer points on (or inside) positive definite ellipsoids.

The form is diagonalised as ``q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2``
and coordinates are fixed from the last one down, each within the interval
left over by the already fixed ones (Fincke-Pohst).  All bookkeeping is done
in Fractions so equality tests are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .core import Matrix


def ldl(q: Matrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Return ``(mu, d)`` with q(x) = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2.

    Raises ValueError unless q is symmetric positive definite.
    """
    if not q.is_symmetric():
        raise ValueError("form matrix must be symmetric")
    n = q.rows
    mu = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        di = q[i, i] - sum((mu[k][i] ** 2 * d[k] for k in range(i)), Fraction(0))
        if di <= 0:
            raise ValueError("form matrix is not positive definite")
        d[i] = di
        for j in range(i + 1, n):
            s = q[i, j] - sum((mu[k][i] * mu[k][j] * d[k] for k in range(i)), Fraction(0))
            mu[i][j] = s / di
    return mu, d


def integer_interval(center: Fraction, radius_sq: Fraction) -> tuple[int, int]:
    """Smallest and largest integer x with (x - center)^2 <= radius_sq (lo > hi if none)."""
    if radius_sq < 0:
        return 1, 0
    r = math.sqrt(float(radius_sq))
    lo = math.floor(center - r) - 1
    hi = math.ceil(center + r) + 1
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return lo, hi


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, r = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p == q.numerator and r * r == q.denominator:
        return Fraction(p, r)
    return None


def enumerate_form(
    q: Matrix,
    target: Fraction | int,
    *,
    center: Sequence[Fraction] | None = None,
    exact: bool = True,
    congruent_mod: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield integer x with (x-c)^T q (x-c) == target (or <= target if not exact).

    ``congruent_mod=m`` restricts to vectors whose coordinates are all
    congruent to each other modulo m.  Yield order is deterministic.
    """
    n = q.rows
    target = Fraction(target)
    if n == 0:
        if target == 0 or (not exact and target >= 0):
            yield ()
        return
    mu, d = ldl(q)
    c = [Fraction(0)] * n if center is None else [Fraction(v) for v in center]
    x = [0] * n
    m = congruent_mod

    def level(i: int, remaining: Fraction, residue: int | None) -> Iterator[tuple[int, ...]]:
        shift = c[i] - sum((mu[i][j] * (x[j] - c[j]) for j in range(i + 1, n)), Fraction(0))
        if exact and i == 0:
            s = rational_sqrt(remaining / d[0])
            if s is None:
                return
            for v in sorted({shift - s, shift + s}):
                if v.denominator != 1:
                    continue
                xi = v.numerator
                if residue is not None and (xi - residue) % m:
                    continue
                x[0] = xi
                yield tuple(x)
            return
        lo, hi = integer_interval(shift, remaining / d[i])
        if residue is not None:
            lo += (residue - lo) % m
            step = m
        else:
            step = 1
        for xi in range(lo, hi + 1, step):
            rest = remaining - d[i] * (xi - shift) ** 2
            x[i] = xi
            if i == 0:
                yield tuple(x)
            else:
                r = residue if residue is not None or m is None else xi % m
                yield from level(i - 1, rest, r)

    yield from level(n - 1, target, None)


@lru_cache(maxsize=None)
def vectors_of_norm(norm: int, dim: int) -> tuple[tuple[int, ...], ...]:
    """All integer vectors of length ``dim`` with squared length ``norm``, sorted."""
    if norm < 0:
        return ()
    parts: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], rem: int, cap: int, k: int) -> None:
        if k == 1:
            s = math.isqrt(rem)
            if s * s == rem and s <= cap:
                parts.append(prefix + (s,))
            return
        top = min(cap, math.isqrt(rem))
        # nonincreasing magnitudes; the rest must fit in (k-1) slots of size <= v
        for v in range(top, -1, -1):
            if v * v * k < rem:
                break
            rec(prefix + (v,), rem - v * v, v, k - 1)

    if dim == 0:
        return ((),) if norm == 0 else ()
    rec((), norm, math.isqrt(norm), dim)
    out = set()
    for p in parts:
        for perm in set(permutations(p)):
            nz = [i for i, v in enumerate(perm) if v]
            for signs in product((1, -1), repeat=len(nz)):
                v = list(perm)
                for i, s in zip(nz, signs):
                    v[i] *= s
                out.add(tuple(v))
    return tuple(sorted(out))
