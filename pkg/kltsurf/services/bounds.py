"""
Exact evaluators for the lc-threshold and volume bounds, and a grid check of how they relate.

Every value is a Fraction. ε must lie in (0, 1/3) unless a function states a wider range.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from kltsurf.core.errors import ParameterError
from kltsurf.schemas.bounds import (
    AuxBounds,
    BoundParams,
    BoundSheet,
    DeltaChoice,
    GridCheck,
    GridReport,
)

logger = logging.getLogger(__name__)

ONE_THIRD = Fraction(1, 3)
ONE_SIXTH = Fraction(1, 6)
RANK1_BOUND = Fraction(64)
CONIC_MAX_DEGREE = 6


def _epsilon(epsilon, ceiling: Fraction = ONE_THIRD) -> Fraction:
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < ceiling:
        raise ParameterError(f"epsilon must lie in (0, {ceiling}), got {epsilon}")
    return epsilon


def _delta(delta, ceiling: Fraction) -> Fraction:
    delta = Fraction(delta)
    if not 0 < delta < ceiling:
        raise ParameterError(f"delta must lie in (0, {ceiling}), got {delta}")
    return delta


# ---------------------------------------------------------------------------
# lc threshold side
# ---------------------------------------------------------------------------


def t0_lower_bound(epsilon, delta) -> Fraction:
    """δ²(ε-δ) / (16 + 4δ + δ²(ε-1)) for 0 < δ < ε < 1."""
    epsilon = _epsilon(epsilon, Fraction(1))
    delta = _delta(delta, epsilon)
    return delta**2 * (epsilon - delta) / (16 + 4 * delta + delta**2 * (epsilon - 1))


def d_cap(delta) -> Fraction:
    """Upper bound (16 + 4δ)/δ² on the coefficient d of the extracted divisor."""
    delta = _delta(delta, Fraction(1))
    return (16 + 4 * delta) / delta**2


def t0_from_d(epsilon, delta, d) -> Fraction:
    """(ε-δ)/(d + ε - 1): the threshold forced by a coefficient bound d > 1 - ε."""
    epsilon = _epsilon(epsilon, Fraction(1))
    delta = _delta(delta, epsilon)
    d = Fraction(d)
    if d + epsilon - 1 <= 0:
        raise ParameterError(f"d must exceed 1 - epsilon, got {d}")
    return (epsilon - delta) / (d + epsilon - 1)


def mu2_floor(epsilon) -> Fraction:
    """3ε³/400."""
    epsilon = _epsilon(epsilon)
    return 3 * epsilon**3 / 400


def mu2_lower_bound(epsilon) -> Fraction:
    """t0 at the canonical choice δ = ε/2; exceeds 3ε³/400."""
    epsilon = _epsilon(epsilon)
    return t0_lower_bound(epsilon, epsilon / 2)


def hirzebruch_cap(epsilon) -> Fraction:
    """Largest index n of a Hirzebruch surface F_n left after contracting, n <= 2/ε."""
    return 2 / _epsilon(epsilon)


def mult_d_cap(epsilon) -> Fraction:
    """Multiplicity of the anti-canonical divisor at a general point: at most 2/ε + 4."""
    return hirzebruch_cap(epsilon) + 4


def divisor_case_bound(epsilon, delta=None) -> Fraction:
    """(ε-δ)/(2/ε + 4 - 1 + ε) = ε(ε-δ)/(2 + 3ε + ε²), δ defaulting to ε/2."""
    epsilon = _epsilon(epsilon)
    delta = epsilon / 2 if delta is None else _delta(delta, epsilon)
    return (epsilon - delta) / (mult_d_cap(epsilon) - 1 + epsilon)


def best_delta(epsilon, grid: int = 100) -> DeltaChoice:
    """Exploratory maximiser of t0 over δ = kε/grid, k = 1..grid-1. Not the canonical δ."""
    epsilon = _epsilon(epsilon)
    if grid < 2:
        raise ParameterError(f"grid must be at least 2, got {grid}")
    best: Optional[Tuple[Fraction, Fraction]] = None
    for k in range(1, grid):
        delta = epsilon * k / grid
        value = t0_lower_bound(epsilon, delta)
        if best is None or value > best[1]:
            best = (delta, value)
    delta, value = best
    return DeltaChoice(epsilon=epsilon, delta=delta, t0_lb=value, grid=grid)


def aux_bounds(delta) -> AuxBounds:
    """Caps used while bounding the extracted divisor; needs 0 < δ < 1/6."""
    delta = _delta(delta, ONE_SIXTH)
    rho_prime_cap = 8 / delta + 1
    return AuxBounds(
        delta=delta,
        c2_floor=-2 / delta,
        rho_cap=8 / delta - 1,
        p_cap=1 / delta,
        q_cap=3 / delta - 2,
        pq_cap=4 / delta - 2,
        rho_prime_cap=rho_prime_cap,
        coeff_floor=delta / (rho_prime_cap + 1),
    )


def ambro_example_t(q: int) -> Fraction:
    """1/((q+1)(q²+q+1)): the threshold of the toric examples with ε = 1/q."""
    if isinstance(q, bool) or not isinstance(q, int) or q < 1:
        raise ParameterError(f"q must be a positive integer, got {q!r}")
    return Fraction(1, (q + 1) * (q * q + q + 1))


# ---------------------------------------------------------------------------
# Volume side
# ---------------------------------------------------------------------------


def m2_upper_bound(epsilon) -> Fraction:
    """2/ε + 4 + 2/3."""
    return 2 / _epsilon(epsilon) + Fraction(14, 3)


def m2_majorant(epsilon) -> Fraction:
    """4/ε, which dominates m2_upper_bound on (0, 1/3)."""
    return 4 / _epsilon(epsilon)


def dpf_bound(epsilon) -> Fraction:
    """6·M/μ with the majorants M <= 4/ε and μ >= 3ε³/400, i.e. 3200/ε⁴."""
    return 6 * m2_majorant(epsilon) / mu2_floor(epsilon)


def dpf_bound_tight(epsilon) -> Fraction:
    """6·(2/ε + 14/3)/mu2_lower_bound(ε), the bound before majorizing."""
    return 6 * m2_upper_bound(epsilon) / mu2_lower_bound(epsilon)


def conic_bound(epsilon, d: int = CONIC_MAX_DEGREE) -> Fraction:
    """144(d+2)/ε² for 1 <= d <= 6; equals 1152/ε² at d = 6."""
    epsilon = _epsilon(epsilon, Fraction(1))
    if isinstance(d, bool) or not isinstance(d, int) or not 1 <= d <= CONIC_MAX_DEGREE:
        raise ParameterError(f"d must be an integer in 1..{CONIC_MAX_DEGREE}, got {d!r}")
    return 144 * (d + 2) / epsilon**2


def rank1_bound() -> Fraction:
    return RANK1_BOUND


def volume_bound(epsilon) -> Fraction:
    """3200/ε⁴."""
    return 3200 / _epsilon(epsilon) ** 4


def bound_sheet(params: BoundParams) -> BoundSheet:
    epsilon = params.epsilon
    delta = params.effective_delta
    return BoundSheet(
        epsilon=epsilon,
        delta=delta,
        t0_lb=t0_lower_bound(epsilon, delta),
        mu2_lb=mu2_lower_bound(epsilon),
        mu2_floor=mu2_floor(epsilon),
        M2_ub=m2_upper_bound(epsilon),
        M2_majorant=m2_majorant(epsilon),
        divisor_case_lb=divisor_case_bound(epsilon, delta),
        dpf_bound=dpf_bound(epsilon),
        dpf_bound_tight=dpf_bound_tight(epsilon),
        conic_bound=conic_bound(epsilon),
        rank1_bound=rank1_bound(),
        volume_bound=volume_bound(epsilon),
        hirzebruch_cap=hirzebruch_cap(epsilon),
        aux=aux_bounds(delta) if delta < ONE_SIXTH else None,
    )


# ---------------------------------------------------------------------------
# Grid sweep over ε = 1/q
# ---------------------------------------------------------------------------


def exceeds(a: Fraction, b: Fraction) -> bool:
    """a > b by integer cross-multiplication (denominators are positive)."""
    return a.numerator * b.denominator > b.numerator * a.denominator


def _grid_checks(q_max: int) -> Dict[str, Callable[[int], bool]]:
    fixed_delta = Fraction(1, 2 * q_max)

    def ratio_in_range(q: int) -> bool:
        ratio = ambro_example_t(q) * 400 * q**3 / 3
        return exceeds(ratio, Fraction(1)) and exceeds(Fraction(140), ratio)

    def volume_dominates(q: int) -> bool:
        eps = Fraction(1, q)
        volume = volume_bound(eps)
        return not exceeds(RANK1_BOUND, volume) and not exceeds(conic_bound(eps), volume)

    def t0_monotone(q: int) -> bool:
        if q >= q_max:
            return True
        return exceeds(
            t0_lower_bound(Fraction(1, q), fixed_delta),
            t0_lower_bound(Fraction(1, q + 1), fixed_delta),
        )

    def t0_from_d_consistent(q: int) -> bool:
        eps = Fraction(1, q)
        return t0_from_d(eps, eps / 2, d_cap(eps / 2)) == mu2_lower_bound(eps)

    return {
        "mu2_exceeds_floor": lambda q: exceeds(mu2_lower_bound(Fraction(1, q)), mu2_floor(Fraction(1, q))),
        "volume_dominates": volume_dominates,
        "ambro_above_mu2": lambda q: exceeds(ambro_example_t(q), mu2_lower_bound(Fraction(1, q))),
        "ambro_ratio": ratio_in_range,
        "divisor_case_dominates": lambda q: exceeds(divisor_case_bound(Fraction(1, q)), mu2_lower_bound(Fraction(1, q))),
        "dpf_tight_below_majorized": lambda q: not exceeds(dpf_bound_tight(Fraction(1, q)), dpf_bound(Fraction(1, q))),
        "m2_below_majorant": lambda q: exceeds(m2_majorant(Fraction(1, q)), m2_upper_bound(Fraction(1, q))),
        "t0_monotone_in_epsilon": t0_monotone,
        "t0_from_d_consistent": t0_from_d_consistent,
    }


def sweep(q_max: int, q_min: int = 4) -> GridReport:
    """Run every named exact check for ε = 1/q, q = q_min..q_max, in grid order."""
    if q_min < 4 or q_max < q_min:
        raise ParameterError(f"need 4 <= q_min <= q_max, got q_min={q_min}, q_max={q_max}")
    checks: List[GridCheck] = []
    for name, check in _grid_checks(q_max).items():
        result = GridCheck(name=name)
        for q in range(q_min, q_max + 1):
            if check(q):
                result.passed += 1
            else:
                result.failed += 1
                if result.first_failure_q is None:
                    result.first_failure_q = q
        if result.failed:
            logger.warning("Grid check %s failed first at q=%s", name, result.first_failure_q)
        checks.append(result)
    logger.info("Bound grid q=%s..%s done", q_min, q_max)
    return GridReport(q_min=q_min, q_max=q_max, checks=checks)
