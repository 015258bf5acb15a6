"""Weight-balance equations that any factorisation M = N^T N or M = N^2 must satisfy.

Writing ``N = a 1^T + 1 b^T + N0 + wt(N) E_n`` and scaling by n^2, the
integers ``w = n^2 wt N`` and ``x = n^2 a`` (and ``y = n^2 b`` for squares) obey

    Gram:    n^4 wt M = n w^2 + sum_j x_j^2
    Square:  n^4 wt M = n w^2 + sum_j x_j y_j

with ``sum_j x_j = sum_j y_j = 0``.  The last coordinate is eliminated, the
equation is cleared of denominators and divided by the gcd of all its
integer coefficients.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .core import Matrix, format_scalar, require_square
from .lattice import enumerate_form
from .svdecomp import decompose, weight


class Mode(str, enum.Enum):
    GRAM = "gram"
    SQUARE = "square"


@dataclass(frozen=True)
class ObstructionSolution:
    """Integer point of an obstruction equation; ``x``/``y`` include the eliminated last entry."""

    w: int
    x: tuple[int, ...]
    y: tuple[int, ...] | None = None

    @property
    def free(self) -> tuple[int, ...]:
        """(w, x_1..x_{n-1}[, y_1..y_{n-1}]): the coordinates the equation is written in."""
        out = (self.w,) + self.x[:-1]
        if self.y is not None:
            out += self.y[:-1]
        return out

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.free)


@dataclass(frozen=True)
class ObstructionForm:
    """``gram_coeff*w^2 + q(x[, y]) = target`` with integer monomial coefficients.

    For Gram mode ``form_matrix`` is the symmetric matrix Q of ``x^T Q x``; it
    may be half-integral, its monomial coefficients (Q_ii and 2 Q_ij) are
    integers.  For Square mode it is the matrix B of the bilinear ``x^T B y``.
    ``scale`` is the factor the unreduced equation was multiplied by.
    """

    n: int
    mode: Mode
    target: int
    gram_coeff: int
    form_matrix: Matrix
    scale: Fraction
    satisfiable: bool = True

    def monomials(self) -> list[tuple[int, str]]:
        """Nonzero (coefficient, monomial) pairs in printing order."""
        terms: list[tuple[int, str]] = [(self.gram_coeff, "w^2")]
        q = self.form_matrix
        k = self.n - 1
        if self.mode is Mode.GRAM:
            for i in range(k):
                for j in range(i, k):
                    c = q[i, i] if i == j else 2 * q[i, j]
                    mono = f"x{i + 1}^2" if i == j else f"x{i + 1}*x{j + 1}"
                    terms.append((int(c), mono))
        else:
            for i in range(k):
                for j in range(k):
                    terms.append((int(q[i, j]), f"x{i + 1}*y{j + 1}"))
        return [(c, m) for c, m in terms if c != 0]

    def __str__(self) -> str:
        parts = []
        for c, mono in self.monomials():
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        lhs = " ".join(parts) if parts else "0"
        return f"{lhs} = {self.target}"

    def evaluate(self, sol: ObstructionSolution) -> Fraction:
        """Left-hand side of the reduced equation at ``sol``."""
        k = self.n - 1
        x = sol.x[:k]
        q = self.form_matrix
        val = Fraction(self.gram_coeff * sol.w * sol.w)
        if self.mode is Mode.GRAM:
            val += sum((q[i, j] * x[i] * x[j] for i in range(k) for j in range(k)), Fraction(0))
        else:
            if sol.y is None:
                raise ValueError("square-mode solution needs y")
            y = sol.y[:k]
            val += sum((q[i, j] * x[i] * y[j] for i in range(k) for j in range(k)), Fraction(0))
        return val

    def is_solution(self, sol: ObstructionSolution) -> bool:
        if len(sol.x) != self.n or sum(sol.x) != 0:
            return False
        if self.mode is Mode.SQUARE and (sol.y is None or len(sol.y) != self.n or sum(sol.y) != 0):
            return False
        return self.evaluate(sol) == self.target

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode.value,
            "target": self.target,
            "gram_coeff": self.gram_coeff,
            "form_matrix": [[format_scalar(v) for v in r] for r in self.form_matrix.row_tuples()],
            "scale": format_scalar(self.scale),
            "satisfiable": self.satisfiable,
            "equation": str(self),
        }


def _eliminated_matrix(k: int) -> list[list[int]]:
    # sum_{j<n} u_j v_j + (sum u)(sum v) = u^T (I + J) v
    return [[2 if i == j else 1 for j in range(k)] for i in range(k)]


def _build(m: Matrix, mode: Mode) -> ObstructionForm:
    require_square(m)
    n = m.rows
    k = n - 1
    rhs = n ** 4 * weight(m)
    denom = rhs.denominator
    base = _eliminated_matrix(k)
    gram_coeff = n * denom
    if mode is Mode.GRAM:
        coeffs = [base[i][i] * denom for i in range(k)] + [
            2 * base[i][j] * denom for i in range(k) for j in range(i + 1, k)
        ]
    else:
        coeffs = [base[i][j] * denom for i in range(k) for j in range(k)]
    target = rhs.numerator
    g_coeff = math.gcd(gram_coeff, *coeffs)
    g = math.gcd(g_coeff, target)
    satisfiable = target % g_coeff == 0
    if mode is Mode.GRAM and target < 0:
        satisfiable = False
    scale = Fraction(denom, g)
    q = Matrix([[Fraction(base[i][j] * denom, g) for j in range(k)] for i in range(k)])
    return ObstructionForm(
        n=n,
        mode=mode,
        target=target // g,
        gram_coeff=gram_coeff // g,
        form_matrix=q,
        scale=scale,
        satisfiable=satisfiable,
    )


def weight_balance_gram(m: Matrix) -> ObstructionForm:
    require_square(m)
    if not m.is_symmetric():
        raise ValueError("Gram obstruction needs a symmetric matrix")
    return _build(m, Mode.GRAM)


def weight_balance_square(m: Matrix) -> ObstructionForm:
    return _build(m, Mode.SQUARE)


def unreduced_holds(m: Matrix, sol: ObstructionSolution, mode: Mode = Mode.GRAM) -> bool:
    """Check n^4 wt M = n w^2 + sum x_j^2 (or sum x_j y_j) without any reduction."""
    n = m.rows
    if mode is Mode.GRAM:
        s = sum(v * v for v in sol.x)
    else:
        if sol.y is None:
            return False
        s = sum(u * v for u, v in zip(sol.x, sol.y))
    return n ** 4 * weight(m) == n * sol.w ** 2 + s


def solution_of(n_matrix: Matrix, mode: Mode = Mode.GRAM) -> ObstructionSolution:
    """The (n^2 wt N, n^2 a[, n^2 b]) point a factor ``N`` induces.

    Only the coordinates the mode uses must be integral; a Gram factor with
    entries in (1/n^2)Z can have a non-integral n^2 b.
    """
    mode = Mode(mode)
    n = n_matrix.rows
    p = decompose(n_matrix)
    s = n * n
    vals = [p.weight * s] + [v * s for v in p.a]
    if mode is Mode.SQUARE:
        vals += [v * s for v in p.b]
    if any(v.denominator != 1 for v in vals):
        raise ValueError("factor does not induce an integer obstruction point")
    w = int(vals[0])
    x = tuple(int(v) for v in vals[1:n + 1])
    y = tuple(int(v) for v in vals[n + 1:]) if mode is Mode.SQUARE else None
    return ObstructionSolution(w, x, y)


def _gram_for_w(f: ObstructionForm, w: int) -> list[ObstructionSolution]:
    rem = f.target - f.gram_coeff * w * w
    if rem < 0:
        return []
    out = []
    for free in enumerate_form(f.form_matrix, rem):
        out.append(ObstructionSolution(w, free + (-sum(free),)))
    return out


def w_bound(f: ObstructionForm) -> int:
    if f.target < 0:
        return -1
    return math.isqrt(f.target // f.gram_coeff)


def solve_gram(
    f: ObstructionForm, *, include_negative_w: bool = False, workers: int = 1
) -> list[ObstructionSolution]:
    """Every integer solution of a Gram-mode form, sorted by (w, x_1, ..., x_{n-1}).

    ``N`` and ``-N`` induce (w, x) and (-w, -x), so by default only ``w >= 0``
    is returned; ``include_negative_w`` gives the raw solution set.
    """
    if f.mode is not Mode.GRAM:
        raise ValueError("solve_gram needs a Gram-mode form")
    if not f.satisfiable:
        return []
    top = w_bound(f)
    ws = list(range(-top if include_negative_w else 0, top + 1))
    ws.reverse()
    if workers > 1 and len(ws) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_gram_for_w, [f] * len(ws), ws))
    else:
        chunks = [_gram_for_w(f, w) for w in ws]
    sols = [s for c in chunks for s in c]
    sols.sort(key=lambda s: s.free)
    return sols


def iter_gram(f: ObstructionForm) -> Iterator[ObstructionSolution]:
    """Lazy variant of solve_gram (w >= 0, descending w, unsorted within)."""
    if f.mode is not Mode.GRAM or not f.satisfiable:
        return
    for w in range(w_bound(f), -1, -1):
        yield from _gram_for_w(f, w)


def solve_square(f: ObstructionForm, box: int) -> list[ObstructionSolution]:
    """All solutions with every free variable in [-box, box], sorted lexicographically."""
    if f.mode is not Mode.SQUARE:
        raise ValueError("solve_square needs a Square-mode form")
    if box < 0:
        raise ValueError("box must be nonnegative")
    if not f.satisfiable:
        return []
    k = f.n - 1
    b = f.form_matrix
    rng = range(-box, box + 1)
    out = []
    for w in rng:
        rem0 = f.target - f.gram_coeff * w * w
        for x in product(rng, repeat=k):
            if k == 0:
                if rem0 == 0:
                    out.append(ObstructionSolution(w, (0,), (0,)))
                continue
            # the equation is linear in y: sum_j coef_j y_j = rem0
            coef = [sum((x[i] * b[i, j] for i in range(k)), Fraction(0)) for j in range(k)]
            for head in product(rng, repeat=k - 1):
                rem = rem0 - sum((c * v for c, v in zip(coef, head)), Fraction(0))
                c = coef[-1]
                if c == 0:
                    tails = list(rng) if rem == 0 else []
                else:
                    t = rem / c
                    tails = [t.numerator] if t.denominator == 1 and abs(t) <= box else []
                for t in tails:
                    y = head + (t,)
                    out.append(ObstructionSolution(w, x + (-sum(x),), y + (-sum(y),)))
    out.sort(key=lambda s: s.free)
    return out


def necessity_check(m: Matrix, mode: Mode | str = Mode.GRAM, box: int | None = None) -> bool:
    """Whether the obstruction of ``m`` has an integer solution.

    Gram mode is decided by exhausting the finite ellipsoid.  Square mode is a
    semi-decision inside the caller's box: False only means none was found.
    """
    mode = Mode(mode)
    if mode is Mode.GRAM:
        f = weight_balance_gram(m)
        return next(iter_gram(f), None) is not None
    if box is None:
        raise ValueError("square-mode check needs an explicit search box")
    return bool(solve_square(weight_balance_square(m), box))
