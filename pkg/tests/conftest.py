import math

import numpy as np
import pytest

from pairbound import construct_extremal


def compositions(n):
    for p in range(1, n - 1):
        for q in range(1, n - p):
            yield p, q, n - p - q


@pytest.fixture
def extremal3():
    return construct_extremal(3, 1, 1, 1)


@pytest.fixture
def e123():
    return np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])


def inv_sqrt(n):
    return 1.0 / math.sqrt(n)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for name in sorted(lines):
            terminalreporter.write_line(lines[name])
