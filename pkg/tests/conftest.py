from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lamcalc import Params


@pytest.fixture(scope="session")
def params() -> Params:
    return Params()
