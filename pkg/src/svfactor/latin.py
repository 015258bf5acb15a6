"""Latin squares, transversals and the co-Latin property.

Symbols are 1..n; row and column indices are 0-based Python indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import Matrix, require_square
from .svdecomp import decompose

Grid = Sequence[Sequence[int]]


def is_latin(grid: Grid) -> bool:
    n = len(grid)
    want = set(range(1, n + 1))
    if any(len(r) != n for r in grid):
        return False
    rows_ok = all(set(r) == want for r in grid)
    return rows_ok and all(set(c) == want for c in zip(*grid))


@dataclass(frozen=True)
class LatinSquare:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_latin(self.cells):
            raise ValueError("grid is not a Latin square")

    @classmethod
    def from_rows(cls, rows: Grid) -> "LatinSquare":
        return cls(tuple(tuple(int(v) for v in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.cells)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.cells[ij[0]][ij[1]]

    def __str__(self) -> str:
        w = len(str(self.n))
        return "\n".join(" ".join(str(v).rjust(w) for v in r) for r in self.cells)


@dataclass(frozen=True)
class Transversal:
    """``mapping[p]`` is the column selected in row p."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("transversal mapping must be a permutation")

    def cells(self) -> list[tuple[int, int]]:
        return list(enumerate(self.mapping))

    def total(self, m: Matrix) -> Fraction:
        return sum((m[p, q] for p, q in enumerate(self.mapping)), Fraction(0))


def hankel_latin(m: int) -> LatinSquare:
    """Entry (i, j) is 1 + ((i + j) mod m), constant along antidiagonals."""
    if m < 1:
        raise ValueError("order must be at least 1")
    return LatinSquare(tuple(tuple(1 + (i + j) % m for j in range(m)) for i in range(m)))


def _doubled(base: LatinSquare) -> list[list[int]]:
    n = 2 * base.n
    out = [[0] * n for _ in range(n)]
    for i in range(base.n):
        for j in range(base.n):
            v = base[i, j]
            out[2 * i][2 * j] = out[2 * i + 1][2 * j + 1] = 2 * v - 1
            out[2 * i][2 * j + 1] = out[2 * i + 1][2 * j] = 2 * v
    return out


def antidiagonal_corner_grid(n: int) -> list[list[int]]:
    """Odd-order corner construction, following the antidiagonal recipe literally.

    Antidiagonals are indexed by k = i + j and read from bottom-left to
    top-right.  The first three and the three after the main antidiagonal
    carry symbols 1..3 in a fixed pattern; every other antidiagonal gets its
    Hankel symbol.  No validation happens here.
    """
    if n < 5 or n % 2 == 0:
        raise ValueError("the antidiagonal construction is for odd n >= 5")
    g = [[0] * n for _ in range(n)]
    h = (n - 3) // 2
    special = {
        0: [1],
        1: [2, 2],
        2: [3, 1, 3],
        n: [3] + [1, 2] * h + [3],
        n + 1: [2] + [3] * (n - 4) + [1],
        n + 2: [1, 2] * h,
    }
    for k in range(2 * n - 1):
        rows = range(min(k, n - 1), max(0, k - n + 1) - 1, -1)
        cells = [(i, k - i) for i in rows]
        vals = special.get(k, [1 + k % n] * len(cells))
        for (i, j), v in zip(cells, vals):
            g[i][j] = v
    return g


def complete_latin(partial: Grid) -> list[list[int]] | None:
    """Backtracking completion of a partial square (0 = empty); first solution or None."""
    n = len(partial)
    g = [list(r) for r in partial]
    rows = [set(v for v in r if v) for r in g]
    cols = [set(g[i][j] for i in range(n) if g[i][j]) for j in range(n)]
    empty = [(i, j) for i in range(n) for j in range(n) if not g[i][j]]

    def fill(t: int) -> bool:
        if t == len(empty):
            return True
        i, j = empty[t]
        for v in range(1, n + 1):
            if v not in rows[i] and v not in cols[j]:
                g[i][j] = v
                rows[i].add(v)
                cols[j].add(v)
                if fill(t + 1):
                    return True
                rows[i].discard(v)
                cols[j].discard(v)
        g[i][j] = 0
        return False

    return g if fill(0) else None


def corner_latin(n: int) -> LatinSquare:
    """Latin square with cells (0,0)=(1,1)=1 and (0,1)=(1,0)=2."""
    if n == 3:
        raise ValueError(
            "no 3x3 Latin square has the corner [[1,2],[2,1]]: "
            "the third row and column would both need two 3s"
        )
    if n < 2:
        raise ValueError("corner pattern needs n >= 2")
    if n % 2 == 0:
        return LatinSquare.from_rows(_doubled(hankel_latin(n // 2)))
    g = antidiagonal_corner_grid(n)
    if not is_latin(g):
        partial = [[0] * n for _ in range(n)]
        partial[0][0] = partial[1][1] = 1
        partial[0][1] = partial[1][0] = 2
        g = complete_latin(partial)
    return LatinSquare.from_rows(g)


def symbol_positions(square: LatinSquare, k: int) -> Transversal:
    """The cells carrying symbol k, as a transversal."""
    n = square.n
    if not 1 <= k <= n:
        raise ValueError(f"symbol {k} outside 1..{n}")
    return Transversal(tuple(r.index(k) for r in square.cells))


def latin_squares(n: int) -> Iterator[LatinSquare]:
    """Every Latin square of order n, by row-major backtracking."""
    g = [[0] * n for _ in range(n)]
    rows = [0] * n
    cols = [0] * n
    full = n * n

    def fill(t: int) -> Iterator[LatinSquare]:
        if t == full:
            yield LatinSquare(tuple(tuple(r) for r in g))
            return
        i, j = divmod(t, n)
        used = rows[i] | cols[j]
        for v in range(1, n + 1):
            bit = 1 << v
            if used & bit:
                continue
            g[i][j] = v
            rows[i] |= bit
            cols[j] |= bit
            yield from fill(t + 1)
            rows[i] ^= bit
            cols[j] ^= bit
        g[i][j] = 0

    yield from fill(0)


def colatin_check(m: Matrix) -> bool:
    """Every transversal (permutation selection) of M sums to zero.

    Each symbol class of a Latin square is a transversal and every
    transversal is a symbol class of some Latin square, so this is the
    co-Latin property itself.
    """
    require_square(m)
    n = m.rows
    if n > 7:
        raise ValueError("n! transversals is too many for n > 7; use colatin_check_fast")
    rows = m.row_tuples()
    zero = Fraction(0)
    return all(
        sum((rows[p][q] for p, q in enumerate(perm)), zero) == 0
        for perm in itertools.permutations(range(n))
    )


def colatin_check_fast(m: Matrix) -> bool:
    """Co-Latin test through membership in the V space."""
    require_square(m)
    p = decompose(m)
    return p.weight == 0 and all(v == 0 for v in p.m0.entries)
