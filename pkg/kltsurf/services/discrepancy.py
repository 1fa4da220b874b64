"""
Log discrepancies and pull-back multiplicities via the path-deletion sums

    a(E_k, Y, 0)     = Σ_j (2 - deg v_j) · Δ(Γ ∖ path(k, j)) / Δ(Γ)
    mult_{E_k} π*C   = Σ_j c_j · Δ(Γ ∖ path(k, j)) / Δ(Γ)

and the boundary discrepancy a(E_k, Y, (1-δ)C) = a(E_k, Y, 0) - (1-δ) mult_{E_k} π*C.

The factor 2 - deg v_j stands for 2 - Σ_{i≠j} E_i·E_j, which needs simple edges;
validation guarantees them.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from kltsurf.core.cache import memoized
from kltsurf.core.errors import GraphError, ParameterError
from kltsurf.schemas.graph import CurveAttachment, DualGraph, LogDiscrepancyVector
from kltsurf.services.dualgraph import check_vertex, degree, delta, path, require_valid

logger = logging.getLogger(__name__)


def check_delta(value: Fraction, ceiling: Fraction = Fraction(1)) -> Fraction:
    value = Fraction(value)
    if not 0 < value < ceiling:
        raise ParameterError(f"delta must lie in (0, {ceiling}), got {value}")
    return value


def check_curve(graph: DualGraph, curve: CurveAttachment) -> None:
    if len(curve.c) != graph.n:
        raise GraphError(
            f"curve attachment has {len(curve.c)} entries for {graph.n} vertices"
        )


@memoized(key_prefix="path_deltas")
def _path_deltas(graph: DualGraph) -> Tuple[Tuple[int, ...], ...]:
    """Row k - 1 holds Δ(Γ ∖ path(k, j)) for j = 1..n; the table is symmetric."""
    require_valid(graph)
    n = graph.n
    table = [[0] * n for _ in range(n)]
    for k in graph.vertices:
        for j in range(k, n + 1):
            table[k - 1][j - 1] = table[j - 1][k - 1] = delta(graph, path(graph, k, j))
    return tuple(tuple(row) for row in table)


@memoized(key_prefix="log_discrepancies")
def _log_discrepancy_values(graph: DualGraph) -> Tuple[Fraction, ...]:
    rows = _path_deltas(graph)
    total = delta(graph)
    weights = [(j, 2 - degree(graph, j)) for j in graph.vertices if degree(graph, j) != 2]
    return tuple(
        Fraction(sum(w * row[j - 1] for j, w in weights), total) for row in rows
    )


@memoized(key_prefix="mult_pullbacks")
def _mult_values(graph: DualGraph, curve: CurveAttachment) -> Tuple[Fraction, ...]:
    require_valid(graph)
    check_curve(graph, curve)
    rows = _path_deltas(graph)
    total = delta(graph)
    attached = [(j, c) for j, c in enumerate(curve.c, start=1) if c]
    return tuple(
        Fraction(sum(c * row[j - 1] for j, c in attached), total) for row in rows
    )


def log_discrepancy(graph: DualGraph, k: int) -> Fraction:
    """a(E_k, Y, 0). Raises GraphError unless the graph is a valid singularity graph."""
    check_vertex(graph, k)
    return _log_discrepancy_values(graph)[k - 1]


def log_discrepancies(graph: DualGraph) -> LogDiscrepancyVector:
    return LogDiscrepancyVector(
        delta_gamma=delta(graph), values=list(_log_discrepancy_values(graph))
    )


def mult_pullback(graph: DualGraph, curve: CurveAttachment, k: int) -> Fraction:
    """mult_{E_k} π*C for the curve meeting E_j with intersection number c_j."""
    check_vertex(graph, k)
    return _mult_values(graph, curve)[k - 1]


def mult_pullbacks(graph: DualGraph, curve: CurveAttachment) -> List[Fraction]:
    return list(_mult_values(graph, curve))


def boundary_discrepancy(
    graph: DualGraph, curve: Optional[CurveAttachment], k: int, delta_: Fraction
) -> Fraction:
    delta_ = check_delta(delta_)
    value = log_discrepancy(graph, k)
    if curve is None:
        return value
    return value - (1 - delta_) * mult_pullback(graph, curve, k)


def boundary_discrepancies(
    graph: DualGraph, curve: Optional[CurveAttachment], delta_: Fraction
) -> List[Fraction]:
    delta_ = check_delta(delta_)
    values = list(_log_discrepancy_values(graph))
    if curve is None:
        return values
    return [a - (1 - delta_) * m for a, m in zip(values, _mult_values(graph, curve))]


def min_boundary_discrepancy(
    graph: DualGraph, curve: Optional[CurveAttachment], delta_: Fraction
) -> Tuple[int, Fraction]:
    """(k, value) minimising a(E_k, Y, (1-δ)C); the least label wins ties."""
    values = boundary_discrepancies(graph, curve, delta_)
    best = min(range(len(values)), key=lambda i: (values[i], i))
    return best + 1, values[best]


def is_delta_lc(
    graph: DualGraph, curve: Optional[CurveAttachment], delta_: Fraction
) -> bool:
    """Whether (Y, (1-δ)C) is δ-lc over the point: every exceptional a(E_k) >= δ."""
    _, value = min_boundary_discrepancy(graph, curve, delta_)
    return value >= delta_


# ---------------------------------------------------------------------------
# Closed forms for the three lc configurations
# ---------------------------------------------------------------------------


def first_heavy_vertex(graph: DualGraph) -> Optional[int]:
    """Least i with m_i >= 3, or None when every weight is 2."""
    return next((v for v in graph.vertices if graph.weight(v) >= 3), None)


def case1_closed_form(graph: DualGraph, delta_: Fraction) -> Fraction:
    """Boundary value at v1 for a chain whose curve meets both ends (c = (2) when n = 1)."""
    total = delta(graph)
    if graph.n == 1:
        return 2 * delta_ / total
    return delta_ * (delta(graph, frozenset({1})) + 1) / total


def case2_closed_form(graph: DualGraph, delta_: Fraction) -> Fraction:
    """Boundary value at the fork (or the middle of [2, w, 2])."""
    return 4 * delta_ / delta(graph)


def case3_closed_form(graph: DualGraph, delta_: Fraction, i0: int) -> Fraction:
    """Boundary value at v_{i0} for a chain whose curve meets v1 only."""
    total = delta(graph)
    return Fraction(i0, total) + delta_ * delta(graph, path(graph, 1, i0)) / total
