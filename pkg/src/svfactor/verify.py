"""Run the decomposition, determinant, adjugate and co-Latin identities on one matrix."""

from __future__ import annotations

from .core import Matrix, Vector, adjugate, charpoly, det, require_square
from .detident import (
    adj_weightless_s,
    adjugate_characterises_s,
    det_rank1_update,
    det_via_decomposition,
    det_via_weight,
)
from .latin import colatin_check, colatin_check_fast
from .svdecomp import decompose, frobenius_inner, is_type_v, recompose, v_char_poly


def identity_report(m: Matrix) -> list[tuple[str, bool]]:
    require_square(m)
    n = m.rows
    p = decompose(m)
    ones = Vector.ones(n)
    e1 = Vector([1] + [0] * (n - 1))
    report = [
        ("round_trip", recompose(p) == m),
        ("a_b_orthogonal_to_ones", p.a.total() == 0 and p.b.total() == 0),
        (
            "m0_zero_line_sums",
            all(v == 0 for v in p.m0.row_sums()) and all(v == 0 for v in p.m0.col_sums()),
        ),
        ("frobenius_orthogonal", frobenius_inner(p.s_part, p.v_part) == 0),
        ("v_part_is_type_v", is_type_v(p.v_part)),
        ("adjugate_identity", m @ adjugate(m) == Matrix.identity(n) * det(m)),
        ("rank1_update", det_rank1_update(m, e1, ones) == det(m + e1.outer(ones))),
        ("det_via_decomposition", det_via_decomposition(m) == det(m)),
        ("det_via_weight_on_s_part", det_via_weight(p.s_part) == det(p.s_part)),
        ("adjugate_of_m0_constant", _holds(lambda: adj_weightless_s(p.m0) is not None)),
        ("adjugate_converse", not adjugate_characterises_s(p.m0).counterexample),
    ]
    if n >= 2:
        report.append(("v_char_poly", v_char_poly(p.a, p.b) == charpoly(p.v_part)))
    if n <= 7:
        report.append(("colatin_agreement", colatin_check(m) == colatin_check_fast(m)))
        report.append(("v_part_colatin", colatin_check(p.v_part)))
    return report


def _holds(fn) -> bool:
    try:
        return bool(fn())
    except Exception:
        return False
