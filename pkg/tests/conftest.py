from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from svfactor.core import Matrix
from svfactor.matrixio import read_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


# one "ACn PASS|FAIL ..." line per acceptance check, shown in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def load(name: str) -> Matrix:
    return read_matrix(str(FIXTURES / name))


WILSON = Matrix([[5, 7, 6, 5], [7, 10, 8, 7], [6, 8, 10, 9], [5, 7, 9, 10]])
Z = Matrix([[2, 3, 2, 2], [1, 1, 2, 1], [0, 0, 1, 2], [0, 0, 1, 1]])
Z1 = Matrix(
    [["1/2", 1, 0, 1], ["3/2", 2, 3, 3], ["1/2", 1, 0, 0], ["3/2", 2, 1, 0]]
)
Z2 = Matrix(
    [["3/2", 2, 2, 2], ["3/2", 2, 2, 1], ["1/2", 1, 1, 2], ["-1/2", -1, 1, 1]]
)
W0 = Matrix(
    [[15, 11, -9, -17], [11, 23, -13, -21], [-9, -13, 15, 7], [-17, -21, 7, 31]]
) * Fraction(1, 16)
W_S = Matrix(
    [[67, 65, 55, 51], [65, 71, 53, 49], [55, 53, 67, 63], [51, 49, 63, 75]]
) * Fraction(1, 8)
Z_V = Matrix(
    [[5, 7, 11, 11], [-3, -1, 3, 3], [-7, -5, -1, -1], [-9, -7, -3, -3]]
) * Fraction(1, 8)


@pytest.fixture
def wilson():
    return WILSON


def fractions_small(max_num: int = 6, max_den: int = 4):
    return st.builds(
        Fraction, st.integers(-max_num, max_num), st.integers(1, max_den)
    )


@st.composite
def square_matrices(draw, min_n=1, max_n=5, elements=None):
    n = draw(st.integers(min_n, max_n))
    el = elements if elements is not None else fractions_small()
    return Matrix([[draw(el) for _ in range(n)] for _ in range(n)])


@st.composite
def integer_matrices(draw, min_n=1, max_n=4, bound=4):
    n = draw(st.integers(min_n, max_n))
    return Matrix(
        [[draw(st.integers(-bound, bound)) for _ in range(n)] for _ in range(n)]
    )
