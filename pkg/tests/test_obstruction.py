import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from svfactor.core import Matrix, adjugate, det
from svfactor.obstruction import (
    Mode,
    ObstructionSolution,
    necessity_check,
    solution_of,
    solve_gram,
    solve_square,
    unreduced_holds,
    weight_balance_gram,
    weight_balance_square,
)

from conftest import WILSON, Z, integer_matrices


def brute_force_gram(f):
    """Naive sweep of the bounding box |x_i| <= sqrt(T (Q^-1)_ii), w solved last."""
    k = f.n - 1
    T = f.target
    if k:
        qinv = adjugate(f.form_matrix) * (1 / det(f.form_matrix))
        bounds = [math.isqrt(math.floor(T * qinv[i, i])) + 1 for i in range(k)]
    else:
        bounds = []
    q2 = [[int(2 * f.form_matrix[i, j]) for j in range(k)] for i in range(k)]
    out = []
    for x in itertools.product(*(range(-b, b + 1) for b in bounds)):
        twice = sum(q2[i][j] * x[i] * x[j] for i in range(k) for j in range(k))
        rest = 2 * T - twice
        if rest < 0 or rest % (2 * f.gram_coeff):
            continue
        w2 = rest // (2 * f.gram_coeff)
        w = math.isqrt(w2)
        if w * w == w2:
            out.append(ObstructionSolution(w, x + (-sum(x),)))
    return sorted(out, key=lambda s: s.free)


def test_wilson_form_is_printed_equation():
    f = weight_balance_gram(WILSON)
    assert str(f) == "2*w^2 + x1^2 + x1*x2 + x1*x3 + x2^2 + x2*x3 + x3^2 = 952"
    assert f.gram_coeff == 2 and f.target == 952
    assert f.scale == Fraction(1, 2)
    assert f.satisfiable


def test_identity_form():
    f = weight_balance_gram(Matrix.identity(4))
    # unreduced 4 w^2 + sum x_j^2 = 64, every coefficient even after elimination
    assert str(f) == "2*w^2 + x1^2 + x1*x2 + x1*x3 + x2^2 + x2*x3 + x3^2 = 32"
    assert f.is_solution(ObstructionSolution(4, (0, 0, 0, 0)))


def test_two_identity_form_by_brute_force():
    m = Matrix.identity(2) * 2
    f = weight_balance_gram(m)
    assert str(f) == "w^2 + x1^2 = 8"
    # oracle: the unreduced equation 16 = 2 w^2 + x1^2 + x2^2, x2 = -x1, over a generous box
    expected = [
        (w, x1)
        for w in range(0, 10)
        for x1 in range(-10, 10)
        if 2 * w * w + 2 * x1 * x1 == 16
    ]
    assert expected == [(2, -2), (2, 2)]
    assert [s.free for s in solve_gram(f)] == expected


def test_gram_errors():
    with pytest.raises(ValueError):
        weight_balance_gram(Z)
    f = weight_balance_gram(Matrix.identity(2) * -1)
    assert not f.satisfiable
    assert solve_gram(f) == []
    with pytest.raises(ValueError):
        solve_gram(weight_balance_square(WILSON))


def test_wilson_square_form():
    f = weight_balance_square(WILSON)
    # n^4 wt W = 256 * 119 / 16; the x_i y_j coefficients include 1, so nothing divides out
    assert f.target == 1904 and f.scale == 1
    assert f.mode is Mode.SQUARE


def test_square_examples():
    f = weight_balance_square(Matrix.identity(2))
    sols = solve_square(f, 3)
    assert ObstructionSolution(2, (0, 0), (0, 0)) in sols
    # M = n E_n = E_n^2 with N = E_n: w = n^2 wt E_n = n^2
    for n in (2, 3):
        g = weight_balance_square(Matrix.ones(n) * n)
        assert g.is_solution(ObstructionSolution(n * n, (0,) * n, (0,) * n))


def test_square_four_identity():
    m = Matrix.identity(2) * 4
    # N = 2 I_2 has wt 1, so w = n^2 wt N = 4
    n_mat = Matrix.identity(2) * 2
    assert n_mat @ n_mat == m
    sol = solution_of(n_mat, Mode.SQUARE)
    assert sol == ObstructionSolution(4, (0, 0), (0, 0))
    assert unreduced_holds(m, sol, Mode.SQUARE)
    assert sol in solve_square(weight_balance_square(m), 4)


def test_square_zero_box():
    for m, expect in [(Matrix.zeros(3), 1), (Matrix.identity(3), 0)]:
        sols = solve_square(weight_balance_square(m), 0)
        assert len(sols) == expect
    with pytest.raises(ValueError):
        solve_square(weight_balance_gram(WILSON), 1)


def test_target_zero_single_solution():
    f = weight_balance_gram(Matrix.zeros(4))
    assert f.target == 0
    assert solve_gram(f) == [ObstructionSolution(0, (0, 0, 0, 0))]
    assert solve_gram(f, include_negative_w=True) == [ObstructionSolution(0, (0, 0, 0, 0))]


def test_wilson_named_solutions():
    sols = solve_gram(weight_balance_gram(WILSON))
    frees = {s.free for s in sols}
    for t in [(19, 17, 1, -7), (18, -8, 20, -12), (19, 11, 7, -1)]:
        assert t in frees
    # Z itself induces the first one
    assert solution_of(Z).free == (19, 17, 1, -7)


def test_wilson_sign_convention():
    f = weight_balance_gram(WILSON)
    half = solve_gram(f)
    both = solve_gram(f, include_negative_w=True)
    assert len(both) == 2 * len(half)
    assert all(s.w > 0 for s in half)


def test_workers_do_not_change_result():
    f = weight_balance_gram(Matrix([[3, 1, 0], [1, 4, 1], [0, 1, 5]]))
    assert solve_gram(f, workers=2) == solve_gram(f, workers=1)


def find_unsolvable_2x2():
    for a, b, c in itertools.product(range(1, 4), range(-3, 4), range(1, 4)):
        if a * c - b * b <= 0:
            continue
        m = Matrix([[a, b], [b, c]])
        if not brute_force_gram(weight_balance_gram(m)):
            return m
    return None


def test_necessity_check():
    assert necessity_check(WILSON, Mode.GRAM)
    assert not necessity_check(Matrix.identity(3) * -1, Mode.GRAM)
    m_star = find_unsolvable_2x2()
    # frozen from the brute-force search: w^2 + x1^2 = 6 has no integer points
    assert m_star == Matrix([[1, 0], [0, 2]])
    assert not necessity_check(m_star, "gram")
    with pytest.raises(ValueError):
        necessity_check(WILSON, Mode.SQUARE)
    assert necessity_check(Matrix.identity(2), Mode.SQUARE, box=2)


@st.composite
def small_gram_forms(draw):
    n = draw(st.integers(1, 4))
    nm = Matrix([[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)])
    return weight_balance_gram(nm.T @ nm)


@settings(max_examples=60, deadline=None)
@given(small_gram_forms())
def test_solver_matches_brute_force(f):
    if f.target > 200 or not f.satisfiable:
        return
    assert solve_gram(f) == brute_force_gram(f)


@settings(max_examples=40, deadline=None)
@given(small_gram_forms())
def test_w_sign_symmetry(f):
    if f.target > 400:
        return
    both = set(solve_gram(f, include_negative_w=True))
    for s in both:
        assert ObstructionSolution(-s.w, s.x) in both


@settings(max_examples=100, deadline=None)
@given(integer_matrices(max_n=5, bound=4))
def test_soundness(nm):
    m = nm.T @ nm
    f = weight_balance_gram(m)
    sol = solution_of(nm)
    assert unreduced_holds(m, sol)
    assert f.is_solution(sol)
    if m.rows <= 3 and f.target <= 3000:
        canon = sol if sol.w >= 0 else ObstructionSolution(-sol.w, tuple(-v for v in sol.x))
        assert canon in solve_gram(f)
    sq = nm @ nm
    ssol = solution_of(nm, Mode.SQUARE)
    assert unreduced_holds(sq, ssol, Mode.SQUARE)
    assert weight_balance_square(sq).is_solution(ssol)


def test_reduction_round_trip_on_random_forms():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 4)
        nm = Matrix([[Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3])) for _ in range(n)] for _ in range(n)])
        m = nm.T @ nm
        f = weight_balance_gram(m)
        if f.target > 500 or not f.satisfiable:
            continue
        for s in solve_gram(f, include_negative_w=True):
            assert unreduced_holds(m, s)
