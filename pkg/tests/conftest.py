import math

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from wgqed import SystemParams

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def finite(lo, hi):
    return st.floats(lo, hi, allow_nan=False, allow_infinity=False)


@st.composite
def passive_params(draw, omega=True):
    return SystemParams(
        delta1=draw(finite(-5, 5)),
        delta2=draw(finite(-5, 5)),
        delta3=draw(finite(-5, 5)),
        gamma1=draw(finite(0, 2)),
        gamma2=draw(finite(0, 2)),
        gamma3=draw(finite(0, 2)),
        big_gamma=draw(finite(0, 3)),
        lam=draw(finite(-2, 2)),
        omega=draw(finite(0, 2)) if omega else 0.0,
        theta=draw(finite(0, 2 * math.pi)),
    )


def seeded_draws(n, seed, **overrides):
    """Passive draws from the documented oracle-check ranges."""
    from wgqed.cli import random_params

    rng = np.random.default_rng(seed)
    return [random_params(rng).replace(**overrides) for _ in range(n)]
