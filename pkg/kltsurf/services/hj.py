"""Hirzebruch-Jung continued fractions for cyclic quotient singularities (1/n)(1, a)."""

from fractions import Fraction
from typing import List, Sequence

from pydantic import ValidationError

from kltsurf.core.errors import ParameterError
from kltsurf.schemas.graph import DualGraph
from kltsurf.schemas.quotient import CyclicQuotient
from kltsurf.services.dualgraph import chain


def cyclic_quotient(n: int, a: int) -> CyclicQuotient:
    """Build a CyclicQuotient, reporting bad (n, a) as ParameterError."""
    try:
        return CyclicQuotient(n=n, a=a)
    except ValidationError as e:
        raise ParameterError(e.errors()[0]["msg"].removeprefix("Value error, ")) from None


def hj_expansion(q: CyclicQuotient) -> List[int]:
    """[m_1, ..., m_r] with n/a = m_1 - 1/(m_2 - 1/(...)), every m_i >= 2."""
    n, a = q.n, q.a
    weights = []
    while a:
        m = -(-n // a)  # ceil(n / a)
        weights.append(m)
        n, a = a, m * a - n
    return weights


def chain_from_quotient(q: CyclicQuotient) -> DualGraph:
    return chain(hj_expansion(q))


def continued_fraction_value(weights: Sequence[int]) -> Fraction:
    """Evaluate m_1 - 1/(m_2 - 1/(... - 1/m_r)) exactly."""
    if not weights:
        raise ParameterError("empty continued fraction")
    value = Fraction(weights[-1])
    for m in reversed(weights[:-1]):
        if value == 0:
            raise ParameterError("continued fraction divides by zero")
        value = m - 1 / value
    return value


def dual_quotient(q: CyclicQuotient) -> CyclicQuotient:
    """(1/n)(1, a') with a·a' ≡ 1 (mod n); its chain is the reverse of q's."""
    return CyclicQuotient(n=q.n, a=pow(q.a, -1, q.n))
