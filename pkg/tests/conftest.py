"""
Pytest configuration and shared fixtures.
"""

from pathlib import Path

import pytest
from click.testing import CliRunner

from lppgames.demand import DemandEngine
from tests.helpers import FIXTURES_DIR, engine_for


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the example instance files."""
    return FIXTURES_DIR


@pytest.fixture
def example1() -> DemandEngine:
    """Two producers, three goods, r = 5: general regime."""
    return engine_for("example1")


@pytest.fixture
def example2() -> DemandEngine:
    """Three producers, r = 10: only the grand coalition over-demands."""
    return engine_for("example2")


@pytest.fixture
def example3() -> DemandEngine:
    """Example 1 with r = 4, so d_N > r."""
    return engine_for("example3")


@pytest.fixture
def example4() -> DemandEngine:
    """Three producers, two goods, r = 50."""
    return engine_for("example4")


@pytest.fixture
def example5() -> DemandEngine:
    """Three producers, r = 5 below the grand demand, non-empty core."""
    return engine_for("example5")


@pytest.fixture
def cli_runner() -> CliRunner:
    """Create a CLI test runner."""
    return CliRunner()


@pytest.fixture
def temp_dir(tmp_path: Path) -> Path:
    """Empty working directory for files the CLI writes."""
    work = tmp_path / "work"
    work.mkdir()
    return work
