import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from redop import OperatorFamily, OrderedBasis, ReductionOperator  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")

G5 = OrderedBasis(["g1", "g2", "g3", "g4", "g5"])

# columns are images of g1..g5
ILLUSTRATION = {
    "T1": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 0]],
    "T2": [[1, 0, 0, 0, 0], [0, 1, 1, 0, 1], [0, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 0]],
    "T3": [[1, 0, 0, 0, 1], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 0]],
    "T4": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 1]],
    "T5": [[1, 0, 0, 1, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 1]],
}
MEET_F = [[1, 1, 1, 1, 1], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0]]
JOIN_T1_T2 = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 0]]
JOIN_U4_T5 = [[1, 0, 0, 1, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 1]]
C_F = [[1, 1, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]


def as_matrix(op):
    return [[int(c) for c in row] for row in op.matrix()]


@pytest.fixture
def g5():
    return G5


@pytest.fixture
def illustration():
    return OperatorFamily([ReductionOperator.from_matrix(G5, m) for m in ILLUSTRATION.values()],
                          list(ILLUSTRATION))


@pytest.fixture
def data_dir():
    return os.path.abspath(DATA)


# -- acceptance summary ----------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
