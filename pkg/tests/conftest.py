import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mwphoton.defaults import SAMPLE_RESONATOR, SAMPLE_SYSTEM


@pytest.fixture(scope="session")
def resonator():
    return SAMPLE_RESONATOR


@pytest.fixture(scope="session")
def system():
    return SAMPLE_SYSTEM
