import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def load_fixture(name):
    with open(FIXTURES / name, "r", encoding="utf-8") as fh:
        return json.load(fh)
