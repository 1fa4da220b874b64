from fractions import Fraction
from math import gcd

import pytest

from kltsurf.core.errors import ParameterError
from kltsurf.services.dualgraph import delta
from kltsurf.services.hj import (
    chain_from_quotient,
    continued_fraction_value,
    cyclic_quotient,
    dual_quotient,
    hj_expansion,
)


@pytest.mark.parametrize(
    "n, a, expected",
    [(5, 2, [3, 2]), (5, 3, [2, 3]), (7, 1, [7]), (7, 6, [2, 2, 2, 2, 2, 2]), (19, 7, [3, 4, 2])],
)
def test_expansion(n, a, expected):
    assert hj_expansion(cyclic_quotient(n, a)) == expected


def test_delta_and_value_for_all_small_quotients(fresh_memo):
    for n in range(2, 201):
        for a in range(1, n):
            if gcd(a, n) != 1:
                continue
            q = cyclic_quotient(n, a)
            weights = hj_expansion(q)
            assert all(m >= 2 for m in weights)
            assert continued_fraction_value(weights) == Fraction(n, a)
            assert delta(chain_from_quotient(q)) == n


def test_dual_quotient_reverses_chain():
    for n, a in [(5, 2), (19, 7), (31, 12)]:
        q = cyclic_quotient(n, a)
        assert hj_expansion(dual_quotient(q)) == hj_expansion(q)[::-1]


def test_a_out_of_range():
    with pytest.raises(ParameterError, match=r"1 <= a < n \(got a=5, n=5\)"):
        cyclic_quotient(5, 5)


def test_not_coprime():
    with pytest.raises(ParameterError, match="gcd"):
        cyclic_quotient(6, 4)


def test_n_too_small():
    with pytest.raises(ParameterError):
        cyclic_quotient(1, 1)


def test_empty_continued_fraction():
    with pytest.raises(ParameterError):
        continued_fraction_value([])
