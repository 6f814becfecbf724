import sys
from pathlib import Path

import pytest

from gamedecomp import parse_game

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def load_fixture(name: str):
    return parse_game((FIXTURES / name).read_text())


@pytest.fixture
def matching_pennies():
    return load_fixture("mp.game")


@pytest.fixture
def mp_duplicated():
    return load_fixture("mp-dup.game")


@pytest.fixture
def depend():
    return load_fixture("depend.game")
