from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Iterable

from pydantic import BaseModel

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value: Any) -> Fraction:
    """Parse an exact rational from ``"p/q"``, ``"p"``, an int or a Fraction.

    Contract:
    - floats and bools are rejected (exactness is the product)
    - zero denominators are rejected
    - raises ValueError on anything else
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise ValueError(f"not an exact rational 'p/q': {value!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(numerator, denominator)
    raise ValueError(f"expected 'p/q' string or integer, got {type(value).__name__}")


def format_rational(value: Fraction | int) -> str:
    """Render a reduced fraction as ``"p/q"``, or ``"p"`` when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_approx(value: Fraction | int) -> str:
    """Decimal display to 6 significant figures, marked approximate."""
    try:
        return f"≈ {float(value):.6g}"
    except OverflowError:
        return "≈ (out of float range)"


def format_int_list(values: Iterable[int]) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


def to_json(payload: BaseModel | list | dict) -> str:
    """Deterministic JSON: models dump in field-declaration order, rationals as strings."""
    if isinstance(payload, BaseModel):
        data = payload.model_dump(mode="json")
    elif isinstance(payload, list):
        data = [
            item.model_dump(mode="json") if isinstance(item, BaseModel) else item
            for item in payload
        ]
    else:
        data = payload
    return json.dumps(data, indent=2, ensure_ascii=False)
