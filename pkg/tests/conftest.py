"""
Pytest configuration and fixtures for Vandermonde approximation tests.
"""

from fractions import Fraction

import pytest
from hypothesis import settings

from vandermonde_approx.components import SystemLogger
from vandermonde_approx.models import AnalysisConfig, NodeVector, SampleSet
from vandermonde_approx.scalar import Backend

# Configure Hypothesis for property-based tests
settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture
def system_logger():
    """Event logger without an event file."""
    return SystemLogger()


@pytest.fixture
def quick_analysis():
    """Analysis settings with a coarse probe grid."""
    return AnalysisConfig(probe_count=400, max_workers=2)


@pytest.fixture
def symmetric_three_nodes():
    """-1, 0, 1 on the exact backend."""
    return NodeVector.of([-1, 0, 1], Backend.EXACT)


@pytest.fixture
def cubic_samples():
    """3x^3 + x^2 - 2x + 2 at x = 0..4."""
    return SampleSet.of(
        [(x, 3 * x ** 3 + x ** 2 - 2 * x + 2) for x in range(5)],
        Backend.EXACT,
    )


@pytest.fixture
def quartic_samples():
    """x^4 + 2 at -1, -1/3, 1/3, 1."""
    nodes = [Fraction(-1), Fraction(-1, 3), Fraction(1, 3), Fraction(1)]
    return SampleSet.of([(x, x ** 4 + 2) for x in nodes], Backend.EXACT)


@pytest.fixture
def cli_workspace(tmp_path, monkeypatch):
    """Runs CLI tests from an empty directory so logs and defaults stay local."""
    monkeypatch.chdir(tmp_path)
    return tmp_path
