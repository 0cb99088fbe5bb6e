"""
Helpers for loading the example instances.
"""

from pathlib import Path

from lppgames.demand import DemandEngine
from lppgames.model import read_instance
from lppgames.schemas import InstanceDocument

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def load_example(name: str) -> InstanceDocument:
    """Read ``tests/fixtures/<name>.json``."""
    return read_instance(FIXTURES_DIR / f"{name}.json")


def engine_for(name: str) -> DemandEngine:
    return DemandEngine(load_example(name).situation())
