import os

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.register_profile("ci", deadline=None, max_examples=100)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def tau_odp():
    """``diag(i, 2i)``: decomposable, one vanishing even constant."""
    from thetanull import validate_period

    return validate_period(np.diag([1j, 2j]))


@pytest.fixture
def tau_smooth():
    """Indecomposable genus-2 period matrix with a smooth theta divisor."""
    from thetanull import validate_period
    from thetanull.verify import BOUNDARY_TAU

    return validate_period(BOUNDARY_TAU)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str, seconds: float):
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f} s)  {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
