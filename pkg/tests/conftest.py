import json
import pathlib

import pytest

from wderiv._common import parse_number

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "data" / "golden"


def golden(name: str) -> list[dict]:
    return json.loads((GOLDEN / name).read_text())["entries"]


def num(text: str) -> float:
    return parse_number(text)


def rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.fixture
def load_golden():
    return golden
