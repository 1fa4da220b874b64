from fractions import Fraction

import pytest

from kltsurf.core.serializers import (
    format_approx,
    format_int_list,
    format_rational,
    parse_rational,
    to_json,
)
from kltsurf.schemas.report import AssertionTally


@pytest.mark.parametrize(
    "text, expected",
    [("1/4", Fraction(1, 4)), ("3", Fraction(3)), (" -2/6 ", Fraction(-1, 3)), (7, Fraction(7))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["0.25", "1/0", "abc", 0.25, True, None])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(2, 4)) == "1/2"
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(-3) == "-3"


def test_format_approx():
    assert format_approx(Fraction(1, 8442)) == "≈ 0.000118455"


def test_format_int_list():
    assert format_int_list([3, 2]) == "[3, 2]"


def test_to_json_keeps_field_order():
    text = to_json(AssertionTally(passed=1, failed=0, vacuous=2))
    assert text == '{\n  "passed": 1,\n  "failed": 0,\n  "vacuous": 2\n}'
