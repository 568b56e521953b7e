import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from entropy_triangle import Partition, build_joint  # noqa: E402

XOR_ROWS = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]


@pytest.fixture
def xor_joint():
    return build_joint(XOR_ROWS, (2, 2, 2))


@pytest.fixture
def xor_part():
    return Partition([0, 1], [2])


@pytest.fixture
def table_0411():
    rows = [[0, 0]] * 4 + [[0, 1]] + [[1, 0]] + [[1, 1]] * 4
    return build_joint(rows, (2, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20181106)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
