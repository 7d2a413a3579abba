import numpy as np
import pytest
from hypothesis import strategies as st

from rotspin import UnitAxis


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)


def unit_axes():
    """Hypothesis strategy for unit axes via (polar, azimuth)."""
    return st.builds(
        UnitAxis.from_angles,
        st.floats(0.0, np.pi, allow_nan=False),
        st.floats(-np.pi, np.pi, allow_nan=False),
    )


angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)
rapidities = st.floats(-5.0, 5.0, allow_nan=False)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
