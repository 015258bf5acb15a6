"""Exact S+V matrix decomposition, quadratic-form obstructions to N^T N / N^2
factorisation, factor reconstruction, adjugate identities and co-Latin matrices."""

from .core import DimensionError, Matrix, Vector, adjugate, det, mat_mul, rank
from .svdecomp import SVParts, decompose, recompose, weight

__all__ = [
    "DimensionError",
    "Matrix",
    "SVParts",
    "Vector",
    "adjugate",
    "decompose",
    "det",
    "mat_mul",
    "rank",
    "recompose",
    "weight",
]
