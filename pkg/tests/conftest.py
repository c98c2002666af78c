import numpy as np
import pytest

from dissim.geometry import Dataset

# Criterion id -> (passed, detail), filled in by test_acceptance.py.
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key}: {detail}")


def line_points(xs):
    """1-D positions embedded on the x axis as length-1 2-D streamlines."""
    return Dataset([[[float(x), 0.0]] for x in xs])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
