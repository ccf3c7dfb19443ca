import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from tcarank.ranks import Preference, Profile, encode_profile  # noqa: E402
from tcarank.tca import ResidualMatrix  # noqa: E402

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

TOY_ITEMS = ("C", "B", "A")


@pytest.fixture
def toy():
    # A>B>C, A>C>B, B>A>C, B>C>A written over the item order (C, B, A)
    prefs = [Preference((2, 1, 0)), Preference((2, 0, 1)),
             Preference((1, 2, 0)), Preference((1, 0, 2))]
    return encode_profile(prefs, TOY_ITEMS)


def random_profile(rng, n, d):
    rows = np.argsort(rng.random((n, d)), axis=1)
    return Profile(tuple(f"i{k}" for k in range(d)), rows)


def random_residual(rng, n, d):
    """Random doubly centered integer matrix posing as a residual."""
    M = rng.integers(-9, 10, size=(n + 1, d))
    M -= M.sum(axis=1, keepdims=True) // d
    M[:, -1] -= M.sum(axis=1)
    M[-1] -= M.sum(axis=0)
    return ResidualMatrix(M.astype(np.int64), 2 * n * d * (d - 1), 1, n, d)


@st.composite
def profiles(draw, min_d=2, max_d=6, min_n=1, max_n=12):
    d = draw(st.integers(min_d, max_d))
    n = draw(st.integers(min_n, max_n))
    rows = [draw(st.permutations(range(d))) for _ in range(n)]
    return Profile(tuple(f"i{k}" for k in range(d)), np.array(rows))


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
