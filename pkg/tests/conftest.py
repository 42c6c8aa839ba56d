"""Shared test configuration."""

import mpmath as mp
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "slow_numerics",
    deadline=None,
    max_examples=20,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("slow_numerics")


@pytest.fixture
def dps30():
    """Run a test at 30 decimal digits."""
    with mp.workdps(30):
        yield
