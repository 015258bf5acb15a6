"""Determinant and adjugate identities built on the S+V decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DimensionError, Matrix, Vector, adjugate, det, rank, require_square
from .svdecomp import decompose, is_type_s, weight


class TheoremViolation(RuntimeError):
    """An identity that must hold for every matrix failed; indicates a bug."""


def det_rank1_update(m: Matrix, u: Vector, v: Vector) -> Fraction:
    """det(M + u v^T) evaluated as det(M) + v^T adj(M) u."""
    require_square(m)
    if u.dim != m.rows or v.dim != m.rows:
        raise DimensionError(f"vectors of dims {u.dim}, {v.dim} do not fit {m.shape}")
    return det(m) + v.dot(adjugate(m) @ u)


def det_via_weight(m: Matrix) -> Fraction:
    """Determinant of a constant-sum matrix as n^2 wt(M) wt(adj M0)."""
    w = is_type_s(m)
    if w is None:
        raise ValueError("matrix does not have the constant sum property")
    n = m.rows
    m0 = m - Matrix.ones(n) * w
    return n * n * w * weight(adjugate(m0))


def det_via_decomposition(m: Matrix) -> Fraction:
    """det M from its parts (a, b, M0, wt M):

    (wt M - 1) 1^T adj(M0 - a b^T) 1 + (b + 1)^T adj(M0 - a b^T + (wt M - 1) E) (a + 1)
    """
    require_square(m)
    p = decompose(m)
    n = m.rows
    one = Vector.ones(n)
    base = p.m0 - p.a.outer(p.b)
    shift = p.weight - 1
    first = shift * one.dot(adjugate(base) @ one)
    second = (p.b + one).dot(adjugate(base + Matrix.ones(n) * shift) @ (p.a + one))
    return first + second


def _constant_value(m: Matrix) -> Fraction | None:
    vals = set(m.entries)
    return vals.pop() if len(vals) == 1 else None


def adj_weightless_s(m0: Matrix) -> Fraction:
    """The constant w with adj(M0) = w E_n for a weightless constant-sum M0."""
    if is_type_s(m0) != 0:
        raise ValueError("matrix is not of constant sum type with weight 0")
    w = _constant_value(adjugate(m0))
    if w is None:
        raise TheoremViolation("adjugate of a weightless constant-sum matrix is not constant")
    return w


@dataclass(frozen=True)
class AdjugateVerdict:
    constant: Fraction | None
    """w if adj(M) = w E_n, else None."""
    weightless_s: bool
    rank: int
    counterexample: bool = False

    @property
    def nonzero_constant(self) -> bool:
        return self.constant is not None and self.constant != 0


def adjugate_characterises_s(m: Matrix) -> AdjugateVerdict:
    """Check that a nonzero-constant adjugate forces weightless type S of rank n-1."""
    require_square(m)
    c = _constant_value(adjugate(m))
    ws = is_type_s(m) == 0
    r = rank(m)
    # adj of any 1x1 matrix is [1], so the converse only has content for n >= 2
    bad = m.rows >= 2 and c is not None and c != 0 and not (ws and r == m.rows - 1)
    return AdjugateVerdict(constant=c, weightless_s=ws, rank=r, counterexample=bad)
