from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from commnorm.indices import NormIndex

reciprocals = st.fractions(min_value=0, max_value=1, max_denominator=12)
indices = reciprocals.map(NormIndex)


def grid_indices(n=5):
    """Indices whose reciprocals are 0, 1/(n-1), ..., 1."""
    return [NormIndex(Fraction(k, n - 1)) for k in range(n)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# Filled by test_acceptance: criterion number -> PASS/FAIL line.
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
