import sys
from pathlib import Path

import pytest

# Ensure src is on path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from singord.arith.poly import PLANE, MultiPoly  # noqa: E402
from singord.config import Settings  # noqa: E402


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def poly():
    """Parse a plane polynomial in x, y."""

    def parse(text: str) -> MultiPoly:
        return MultiPoly.parse(text, PLANE)

    return parse


@pytest.fixture
def packs_dir():
    return str(Path(__file__).parent.parent / "packs")
