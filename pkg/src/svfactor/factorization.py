"""Turning obstruction solutions into rational factors N with N^T N = M.

Given an obstruction point (w, x) the factor is ``N = a 1^T + 1 b^T + N0 + w_N E_n``
with ``a = x / n^2`` and ``w_N = w / n^2``.  Eliminating ``b`` leaves the
quadratic matrix equation

    N0^T (a a^T + n w_N^2 I) N0 - N0^T a y^T - y a^T N0 = n w_N^2 M0 - y y^T

for a weightless constant-sum ``N0`` (``y``, ``M0`` are parts of ``M``).  Its
diagonal entries pin each column of N0 to an ellipsoid, the off-diagonal
entries couple pairs of columns, and the last column is minus the sum of the
others.  Columns are enumerated exactly on the scaled lattice ``n^3 N0``.

:func:`gram_backtrack_oracle` solves the same problem by a completely
different route (columns of ``d N`` as integer vectors of prescribed norms and
inner products) and serves as the cross-check.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import DimensionError, Matrix, Vector, is_psd, mat_mul, require_square
from .lattice import enumerate_form, vectors_of_norm
from .obstruction import (
    ObstructionSolution,
    iter_gram,
    solve_gram,
    unreduced_holds,
    weight_balance_gram,
)
from .svdecomp import decompose


class ObstructionMismatch(ValueError):
    """The supplied point does not satisfy the Gram obstruction of the matrix."""


@dataclass(frozen=True)
class FactorCandidate:
    n_matrix: Matrix
    source_solution: ObstructionSolution | None = None

    @property
    def is_integer(self) -> bool:
        return self.n_matrix.is_integral()


@dataclass(frozen=True)
class SignedPermutation:
    """``U[i, permutation[i]] = signs[i]``; acts on factors from the left."""

    permutation: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.permutation)
        if sorted(self.permutation) != list(range(n)) or len(self.signs) != n:
            raise ValueError("not a signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def all(cls, n: int) -> Iterator["SignedPermutation"]:
        for perm in itertools.permutations(range(n)):
            for signs in itertools.product((1, -1), repeat=n):
                yield cls(perm, signs)

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "SignedPermutation":
        perm = list(range(n))
        rng.shuffle(perm)
        return cls(tuple(perm), tuple(rng.choice((1, -1)) for _ in range(n)))

    def matrix(self) -> Matrix:
        n = len(self.permutation)
        return Matrix(
            [[self.signs[i] if j == self.permutation[i] else 0 for j in range(n)] for i in range(n)]
        )

    def apply(self, m: Matrix) -> Matrix:
        rows = m.row_tuples()
        return Matrix._raw(
            tuple(tuple(s * v for v in rows[p]) for p, s in zip(self.permutation, self.signs))
        )


@dataclass
class EquivalenceClass:
    canonical: Matrix
    members: list[FactorCandidate] = field(default_factory=list)


@dataclass
class FactorStats:
    solutions: int = 0
    fertile: int = 0
    classes: int = 0
    distinct_factors: int = 0
    seconds: float = 0.0

    def summary(self) -> str:
        return f"solutions={self.solutions} fertile={self.fertile} classes={self.classes}"


def is_signed_permutation(u: Matrix) -> bool:
    if not u.is_square:
        return False
    rows = u.row_tuples()
    for line in itertools.chain(rows, zip(*rows)):
        nz = [v for v in line if v != 0]
        if len(nz) != 1 or abs(nz[0]) != 1:
            return False
    return True


def canonical_form(n_matrix: Matrix) -> Matrix:
    """Least matrix (row-major lexicographic) in the orbit {U N : U signed permutation}.

    Row signs are independent, so each row is replaced by the smaller of
    itself and its negation; sorting those rows then gives the minimum.
    """
    require_square(n_matrix)
    best = []
    for r in n_matrix.row_tuples():
        neg = tuple(-v for v in r)
        best.append(min(r, neg))
    best.sort()
    return Matrix._raw(tuple(best))


def classify(candidates: Iterable[Matrix | FactorCandidate]) -> list[EquivalenceClass]:
    groups: dict[Matrix, EquivalenceClass] = {}
    dim = None
    for c in candidates:
        fc = c if isinstance(c, FactorCandidate) else FactorCandidate(c)
        m = fc.n_matrix
        require_square(m)
        if dim is None:
            dim = m.rows
        elif m.rows != dim:
            raise DimensionError(f"mixed dimensions {dim} and {m.rows}")
        key = canonical_form(m)
        groups.setdefault(key, EquivalenceClass(key)).members.append(fc)
    return [groups[k] for k in sorted(groups, key=lambda m: m.row_tuples())]


# ---------------------------------------------------------------------------
# Reconstruction through the quadratic matrix equation


def _check_solution(m: Matrix, sol: ObstructionSolution) -> None:
    n = m.rows
    if len(sol.x) != n or sum(sol.x) != 0 or not unreduced_holds(m, sol):
        raise ObstructionMismatch(f"({sol}) does not satisfy the Gram obstruction")


def _column_candidates(
    gmat: Matrix, center: Vector, level: Fraction, n: int
) -> list[tuple[int, ...]]:
    # P ranges over zero-sum integer n-vectors whose entries share a residue mod n;
    # parametrised by its first n-1 entries.
    k = n - 1
    e = Matrix([[1 if i == j else 0 for j in range(k)] for i in range(k)] + [[-1] * k])
    q = mat_mul(mat_mul(e.T, gmat), e)
    out = []
    for z in enumerate_form(q, level, center=center.entries[:k], congruent_mod=n):
        out.append(z + (-sum(z),))
    return out


def reconstruct_gram(m: Matrix, sol: ObstructionSolution) -> list[FactorCandidate]:
    """All factors N in (1/n^2)Z^{n x n} with N^T N = M inducing ``sol``.

    Duplicates are removed; the result is sorted by row tuples.  ``w = 0``
    falls back to the column-Gram search restricted to the row sums ``sol`` fixes.
    """
    require_square(m)
    if not m.is_symmetric():
        raise ValueError("Gram factorisation needs a symmetric matrix")
    _check_solution(m, sol)
    n = m.rows
    if sol.w == 0:
        r = [Fraction(xi + sol.w, n) for xi in sol.x]
        found = {
            p: None for p in _gram_columns(m, n * n, row_sums=r)
        }
        return [FactorCandidate(p, sol) for p in sorted(found, key=lambda p: p.row_tuples())]

    nn = n * n
    a = Vector(Fraction(v, nn) for v in sol.x)
    w_n = Fraction(sol.w, nn)
    parts = decompose(m)
    y, m0 = parts.a, parts.m0
    lam = a.dot(a) + n * w_n * w_n
    # pruning: right-hand side of the substituted form L^T G L = ... must be PSD
    if not is_psd((m0 + y.outer(y) * (1 / lam)) * (n * w_n * w_n)):
        return []

    s = n ** 3
    gmat = a.outer(a) + Matrix.identity(n) * (n * w_n * w_n)
    rhs = m0 * (n * w_n * w_n) - y.outer(y)

    cols: list[list[tuple[int, ...]]] = []
    for j in range(n - 1):
        center = a * (s * y[j] / lam)
        level = s * s * rhs[j, j] + s * s * y[j] * y[j] * a.dot(a) / lam
        cands = _column_candidates(gmat, center, level, n)
        if not cands:
            return []
        cols.append(cands)

    # per-candidate data for the coupling equations
    def prep(p: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[Fraction, ...], Fraction]:
        gp = tuple(sum((gmat[i, k] * p[k] for k in range(n)), Fraction(0)) for i in range(n))
        return p, gp, sum((a[i] * p[i] for i in range(n)), Fraction(0))

    prepped = [[prep(p) for p in c] for c in cols]

    def coupled(pj, pk, j: int, k: int) -> bool:
        lhs = sum((u * v for u, v in zip(pj[0], pk[1])), Fraction(0)) - s * (
            pj[2] * y[k] + y[j] * pk[2]
        )
        return lhs == s * s * rhs[j, k]

    results: dict[Matrix, None] = {}
    chosen: list = []

    def finish() -> None:
        last = tuple(-sum(c[0][i] for c in chosen) for i in range(n))
        pl = prep(last)
        if not coupled(pl, pl, n - 1, n - 1):
            return
        if not all(coupled(c, pl, j, n - 1) for j, c in enumerate(chosen)):
            return
        p_cols = [c[0] for c in chosen] + [last]
        n0 = Matrix.from_columns(p_cols) * Fraction(1, s)
        b = (y - n0.T @ a) * (1 / (n * w_n))
        cand = (
            a.outer(Vector.ones(n))
            + Vector.ones(n).outer(b)
            + n0
            + Matrix.ones(n) * w_n
        )
        if (cand * nn).is_integral() and mat_mul(cand.T, cand) == m:
            results[cand] = None

    def extend(j: int) -> None:
        if j == n - 1:
            finish()
            return
        for pj in prepped[j]:
            if all(coupled(c, pj, i, j) for i, c in enumerate(chosen)):
                chosen.append(pj)
                extend(j + 1)
                chosen.pop()

    extend(0)
    return [FactorCandidate(p, sol) for p in sorted(results, key=lambda p: p.row_tuples())]


# ---------------------------------------------------------------------------
# Independent oracle: integer columns of prescribed Gram matrix


def _gram_columns(
    m: Matrix, denominator: int, row_sums: Sequence[Fraction] | None = None
) -> Iterator[Matrix]:
    """Every N with entries in (1/d)Z and N^T N = M (optionally with N 1 = row_sums)."""
    n = m.rows
    d2 = denominator * denominator
    scaled = m * d2
    if not scaled.is_integral():
        return
    g = [[int(v) for v in r] for r in scaled.row_tuples()]
    target_sum = None
    if row_sums is not None:
        ts = [v * denominator for v in row_sums]
        if any(v.denominator != 1 for v in ts):
            return
        target_sum = [int(v) for v in ts]
    cands = [vectors_of_norm(g[j][j], n) for j in range(n)]
    chosen: list[tuple[int, ...]] = []

    def dot(u, v):
        return sum(p * q for p, q in zip(u, v))

    def done() -> Matrix:
        return Matrix.from_columns(chosen) * Fraction(1, denominator)

    def extend(j: int) -> Iterator[Matrix]:
        if j == n:
            yield done()
            return
        if target_sum is not None and j == n - 1:
            last = tuple(t - sum(c[i] for c in chosen) for i, t in enumerate(target_sum))
            if dot(last, last) == g[j][j] and all(dot(c, last) == g[i][j] for i, c in enumerate(chosen)):
                chosen.append(last)
                yield done()
                chosen.pop()
            return
        for v in cands[j]:
            if all(dot(c, v) == g[i][j] for i, c in enumerate(chosen)):
                chosen.append(v)
                yield from extend(j + 1)
                chosen.pop()

    yield from extend(0)


def gram_backtrack_oracle(m: Matrix, denominator: int) -> list[Matrix]:
    """Canonical representatives of all classes of N in (1/d)Z^{n x n} with N^T N = M."""
    require_square(m)
    if not m.is_symmetric():
        raise ValueError("Gram factorisation needs a symmetric matrix")
    if denominator < 1:
        raise ValueError("denominator must be a positive integer")
    reps = {canonical_form(p) for p in _gram_columns(m, denominator)}
    return sorted(reps, key=lambda p: p.row_tuples())


# ---------------------------------------------------------------------------
# Pipeline


def _reconstruct_batch(args: tuple[Matrix, list[ObstructionSolution]]):
    m, sols = args
    return [(s, reconstruct_gram(m, s)) for s in sols]


def full_factor_search(
    m: Matrix, *, workers: int = 1, solutions: Sequence[ObstructionSolution] | None = None
) -> tuple[list[EquivalenceClass], FactorStats]:
    """Obstruction -> enumeration -> reconstruction -> classification.

    ``fertile`` counts solutions that lift to at least one factor;
    ``distinct_factors`` counts distinct factor matrices over all solutions.
    """
    t0 = time.perf_counter()
    require_square(m)
    f = weight_balance_gram(m)
    sols = list(solutions) if solutions is not None else solve_gram(f, workers=workers)
    stats = FactorStats(solutions=len(sols))
    if workers > 1 and len(sols) > 1:
        size = max(1, len(sols) // (workers * 8))
        batches = [sols[i:i + size] for i in range(0, len(sols), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            lifted = [r for batch in ex.map(_reconstruct_batch, [(m, b) for b in batches]) for r in batch]
    else:
        lifted = [(s, reconstruct_gram(m, s)) for s in sols]

    groups: dict[Matrix, EquivalenceClass] = {}
    seen: set[Matrix] = set()
    for _, factors in lifted:
        if factors:
            stats.fertile += 1
        for fc in factors:
            if fc.n_matrix in seen:
                continue
            seen.add(fc.n_matrix)
            key = canonical_form(fc.n_matrix)
            groups.setdefault(key, EquivalenceClass(key)).members.append(fc)
    classes = [groups[k] for k in sorted(groups, key=lambda x: x.row_tuples())]
    stats.classes = len(classes)
    stats.distinct_factors = len(seen)
    stats.seconds = time.perf_counter() - t0
    return classes, stats


def first_factor(m: Matrix) -> FactorCandidate | None:
    """First factor found scanning obstruction solutions by decreasing w."""
    for s in iter_gram(weight_balance_gram(m)):
        found = reconstruct_gram(m, s)
        if found:
            return found[0]
    return None
