import os
import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(TESTS / "oracle"))


@pytest.fixture(scope="session")
def data_dir():
    return TESTS / "data"


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("VAXSENT_CLI")
    if not path:
        pytest.skip("VAXSENT_CLI not set")
    return path
