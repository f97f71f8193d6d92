from fractions import Fraction

import pytest

from hellysat.complex_core import VertexPartition, build_complex, full_simplex
from hellysat.geometry import Box, nerve

# (criterion, passed, detail) rows printed by the acceptance module
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


@pytest.fixture
def path4():
    return build_complex(4, [[0, 1], [1, 2], [2, 3]])


@pytest.fixture
def c3():
    return build_complex(3, [[0, 1], [1, 2], [0, 2]])


@pytest.fixture
def simplex4():
    return full_simplex(4)


@pytest.fixture
def colorful_intervals():
    fam = [Box.of((0, 2)), Box.of((3, 5)), Box.of((1, 4)), Box.of((0, Fraction(1, 2)))]
    return nerve(fam), VertexPartition.from_parts([[0, 1], [2, 3]])
