"""Stable JSON output: sorted keys, rationals as "p/q", no floats."""
import json
from fractions import Fraction
from numbers import Rational
from pathlib import Path

from .arith.poly import MultiPoly
from .arith.scalars import rational_text


def to_jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, MultiPoly):
        return value.to_text()
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    if isinstance(value, Fraction):
        return rational_text(value)
    if isinstance(value, Rational):
        return rational_text(Fraction(int(value.numerator), int(value.denominator)))
    if isinstance(value, float):
        raise TypeError(f"floating point value {value!r} in JSON output")
    # domain elements of QQ and QQ<sqrt(r)> print exactly
    return str(value)


def dumps(data) -> str:
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False)


def error_payload(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


def write(data, path: str | Path | None) -> str:
    text = dumps(data)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
