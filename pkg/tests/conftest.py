import os
import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

os.environ.setdefault("CPH_SEED", "0")


@pytest.fixture
def seed() -> int:
    return int(os.environ["CPH_SEED"])
