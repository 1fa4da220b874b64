"""Exact rational value type shared by every schema."""

from fractions import Fraction
from typing import Annotated

from pydantic import PlainSerializer, PlainValidator, WithJsonSchema

from kltsurf.core.serializers import format_rational, parse_rational

# Validated from "p/q" strings or ints; dumped as reduced "p/q" strings in JSON mode only,
# so python-mode dumps keep real Fractions.
ExactRational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str, when_used="json"),
    WithJsonSchema(
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$", "examples": ["3/5"]}
    ),
]

__all__ = ["ExactRational"]
