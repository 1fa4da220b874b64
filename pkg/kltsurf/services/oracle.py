"""
Independent linear-system derivation of discrepancies, solved exactly over QQ with sympy's
DomainMatrix (dense LU, no symbolic simplification).

Adjunction for a smooth rational E_j gives K·E_j = m_j - 2, so writing
K_Y = π*K_X + Σ (a_i - 1) E_i and x_i = a_i - 1:

    Σ_i x_i (E_i·E_j) = m_j - 2          (log discrepancy a_k = 1 + x_k)

and π*C = π⁻¹_*C + Σ μ_i E_i being numerically trivial on every E_j:

    Σ_i μ_i (E_i·E_j) = -c_j             (multiplicity mult_{E_k} π*C = μ_k)

No Δ sums and no tree paths are used here.
"""

from fractions import Fraction
from typing import List, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from kltsurf.core.errors import GraphError
from kltsurf.schemas.graph import CurveAttachment, DualGraph
from kltsurf.services.dualgraph import intersection_matrix


def _solve(graph: DualGraph, rhs: Sequence[int]) -> List[Fraction]:
    n = graph.n
    matrix = DomainMatrix(
        [[QQ(x) for x in row] for row in intersection_matrix(graph)], (n, n), QQ
    )
    column = DomainMatrix([[QQ(v)] for v in rhs], (n, 1), QQ)
    try:
        solution = matrix.lu_solve(column)
    except DMNonInvertibleMatrixError:
        raise GraphError("intersection matrix is singular") from None
    return [_to_fraction(row[0]) for row in solution.to_list()]


def _to_fraction(value) -> Fraction:
    exact = QQ.to_sympy(value)
    return Fraction(int(exact.p), int(exact.q))


def log_discrepancy_oracle(graph: DualGraph) -> List[Fraction]:
    """All a(E_k, Y, 0), k = 1..n."""
    x = _solve(graph, [graph.weight(j) - 2 for j in graph.vertices])
    return [1 + value for value in x]


def mult_pullback_oracle(graph: DualGraph, curve: CurveAttachment) -> List[Fraction]:
    """All mult_{E_k} π*C, k = 1..n."""
    if len(curve.c) != graph.n:
        raise GraphError(
            f"curve attachment has {len(curve.c)} entries for {graph.n} vertices"
        )
    return _solve(graph, [-c for c in curve.c])
