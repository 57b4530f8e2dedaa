"""
Shared pytest fixtures
"""

import json
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent
sys.path.insert(0, str(ROOT))

from src.core import spin_sector  # noqa: E402


@pytest.fixture(scope="session")
def reference_values():
    """Literature values kept under evaluation/"""
    with open(ROOT / "evaluation" / "reference_values.json") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def ground_n11():
    return spin_sector.ground_candidate(11)
