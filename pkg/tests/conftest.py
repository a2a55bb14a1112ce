"""Shared fixtures and hypothesis strategies."""

import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from leibniz import Matrix, Scalar  # noqa: E402
from leibniz.linalg import det  # noqa: E402

settings.register_profile(
    "exact",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "exact"))

small_ints = st.integers(min_value=-4, max_value=4)
scalars = st.builds(Scalar, small_ints, small_ints)
rationals = st.builds(lambda p, q: Scalar(p) / Scalar(q), st.integers(-9, 9), st.integers(1, 9))


def invertible_matrices(n):
    """Random integer Gaussian matrices with nonzero determinant."""
    entries = st.lists(scalars, min_size=n * n, max_size=n * n)
    return entries.map(lambda xs: Matrix([xs[i * n:(i + 1) * n] for i in range(n)])).filter(lambda m: bool(det(m)))


@pytest.fixture(scope="session")
def verified():
    """Every catalog claim replayed once per test session, keyed by claim text."""
    from leibniz.catalog.verify import verify_catalog

    return {rec.claim: line for rec, line in verify_catalog()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
