import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hinf_interp.halfplane import PointSequence

settings.register_profile(
    "repo", deadline=None, max_examples=30, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def one_point():
    return PointSequence(np.array([1j]))


@pytest.fixture
def two_points():
    return PointSequence(np.array([1j, 3j]))


def random_points(rng, n, lo=0.1, hi=10.0, xspan=10.0):
    """Distinct points with log-uniform heights; used by several property tests."""
    y = np.exp(rng.uniform(np.log(lo), np.log(hi), n))
    x = rng.uniform(-xspan, xspan, n)
    return PointSequence(x + 1j * y)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
