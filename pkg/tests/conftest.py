import numpy as np
import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def prob_dists(draw, min_size=1, max_size=8):
    n = draw(st.integers(min_size, max_size))
    raw = draw(st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=n, max_size=n))
    raw = np.array(raw)
    if raw.sum() <= 1e-6:
        raw[draw(st.integers(0, n - 1))] = 1.0
    return raw / raw.sum()


@st.composite
def joint_dists(draw, max_dim=5):
    W = draw(st.integers(1, max_dim))
    W2 = draw(st.integers(1, max_dim))
    return draw(prob_dists(min_size=W * W2, max_size=W * W2)).reshape(W, W2)


entropic_indices = st.floats(min_value=0.05, max_value=50.0, allow_nan=False)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
