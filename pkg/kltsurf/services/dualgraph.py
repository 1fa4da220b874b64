"""
Dual graph calculus: validation, tree paths and the determinant Δ of induced subgraphs.

Vertices are 1-based. Every function here is pure; expensive results are memoized in
the process-wide memo keyed by the (frozen, hashable) graph.
"""

import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from kltsurf.core.cache import memoized
from kltsurf.core.errors import GraphError
from kltsurf.schemas.graph import DualGraph, SubgraphSelector, ValidationReport

logger = logging.getLogger(__name__)

EMPTY: SubgraphSelector = frozenset()


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def chain(weights: Sequence[int]) -> DualGraph:
    """Chain v1 - v2 - ... - vn with the given weights."""
    weights = tuple(weights)
    return DualGraph(
        weights=weights, edges=tuple((i, i + 1) for i in range(1, len(weights)))
    )


def star(leaves: Sequence[int], center: int) -> DualGraph:
    """Leaves labelled 1..k, center labelled k+1."""
    k = len(leaves)
    return DualGraph(
        weights=tuple(leaves) + (center,),
        edges=tuple((i, k + 1) for i in range(1, k + 1)),
    )


def fork(leaves: Sequence[int], center: int, arm: Sequence[int]) -> DualGraph:
    """One-fork tree: leaves 1 and 2 on the fork 3, then the arm 4..n as a chain.

    The far end of the arm (vertex n) is where a Case 2 curve attaches.
    """
    if len(leaves) != 2:
        raise GraphError("a fork has exactly two short leaves")
    weights = tuple(leaves) + (center,) + tuple(arm)
    edges = [(1, 3), (2, 3)]
    edges.extend((v, v + 1) for v in range(3, len(weights)))
    return DualGraph(weights=weights, edges=tuple(edges))


def relabel(graph: DualGraph, permutation: Sequence[int]) -> DualGraph:
    """Isomorphic copy where old vertex v becomes ``permutation[v - 1]``."""
    if sorted(permutation) != list(graph.vertices):
        raise GraphError(f"not a permutation of 1..{graph.n}: {list(permutation)}")
    weights = [0] * graph.n
    for old, new in enumerate(permutation, start=1):
        weights[new - 1] = graph.weight(old)
    edges = tuple((permutation[a - 1], permutation[b - 1]) for a, b in graph.edges)
    return DualGraph(weights=tuple(weights), edges=edges)


# ---------------------------------------------------------------------------
# Matrices and determinants
# ---------------------------------------------------------------------------


def intersection_matrix(
    graph: DualGraph, keep: Optional[Iterable[int]] = None
) -> List[List[int]]:
    """Intersection matrix on ``keep`` (default: all vertices), rows in increasing label order.

    Diagonal is -m_i; each edge occurrence adds 1 off the diagonal.
    """
    labels = sorted(graph.vertices if keep is None else set(keep))
    index = {v: i for i, v in enumerate(labels)}
    matrix = [[0] * len(labels) for _ in labels]
    for v in labels:
        matrix[index[v]][index[v]] = -graph.weight(v)
    for a, b in graph.edges:
        if a in index and b in index:
            matrix[index[a]][index[b]] += 1
            matrix[index[b]][index[a]] += 1
    return matrix


def _catch_up(row: List[int], start: int, prev: int, stale: int) -> None:
    if stale != prev:
        for j in range(start, len(row)):
            row[j] = row[j] * prev // stale


def _bareiss_pivots(
    matrix: Sequence[Sequence[int]], pivoting: bool = True
) -> Tuple[int, List[int]]:
    """Fraction-free (Bareiss) elimination; returns (sign, pivots in use order).

    Without pivoting the k-th pivot is the k-th leading principal minor and elimination
    stops at the first zero pivot. With pivoting a column with no nonzero entry left
    ends it with a final 0 (singular matrix).

    A row with a zero in the pivot column is only rescaled by pivot/prev, and consecutive
    rescalings telescope, so such rows are brought up to date lazily. ``scale[i]`` is the
    divisor row i was last current for. Tree matrices are sparse, so most rows are skipped.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    scale = [1] * n
    sign = 1
    prev = 1
    pivots: List[int] = []
    for k in range(n):
        if pivoting and a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                pivots.append(0)
                return sign, pivots
            a[k], a[swap] = a[swap], a[k]
            scale[k], scale[swap] = scale[swap], scale[k]
            sign = -sign
        _catch_up(a[k], k, prev, scale[k])
        scale[k] = prev
        pivot = a[k][k]
        pivots.append(pivot)
        if pivot == 0:
            return sign, pivots
        for i in range(k + 1, n):
            row = a[i]
            if row[k] == 0:
                continue
            _catch_up(row, k, prev, scale[i])
            for j in range(k + 1, n):
                # exact division
                row[j] = (row[j] * pivot - row[k] * a[k][j]) // prev
            scale[i] = pivot
        prev = pivot
    return sign, pivots


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant; the empty matrix has determinant 1."""
    sign, pivots = _bareiss_pivots(matrix)
    return sign * pivots[-1] if pivots else 1


def leading_minors(matrix: Sequence[Sequence[int]]) -> List[int]:
    """All leading principal minors, read off the unpivoted Bareiss pivots.

    After a zero pivot the remaining minors are computed directly.
    """
    _, minors = _bareiss_pivots(matrix, pivoting=False)
    minors.extend(
        determinant([list(row[:size]) for row in matrix[:size]])
        for size in range(len(minors) + 1, len(matrix) + 1)
    )
    return minors


# ---------------------------------------------------------------------------
# Graph structure
# ---------------------------------------------------------------------------


@memoized(key_prefix="nx_graph")
def nx_graph(graph: DualGraph) -> nx.Graph:
    """Frozen networkx view of the graph (duplicate edges collapse)."""
    g = nx.Graph()
    g.add_nodes_from(graph.vertices)
    g.add_edges_from(graph.edges)
    return nx.freeze(g)


def degree(graph: DualGraph, v: int) -> int:
    """Number of edge occurrences at v, i.e. Σ_{i≠v} E_i·E_v for simple edges."""
    check_vertex(graph, v)
    return sum((a == v) + (b == v) for a, b in graph.edges)


def components(graph: DualGraph, deleted: SubgraphSelector = EMPTY) -> List[SubgraphSelector]:
    """Connected components of the induced subgraph on the remaining vertices, by least label."""
    _check_subset(graph, deleted)
    neighbours = _neighbours(graph)
    seen = set(deleted)
    parts: List[SubgraphSelector] = []
    for v in graph.vertices:
        if v in seen:
            continue
        seen.add(v)
        part, stack = [v], [v]
        while stack:
            for u in neighbours[stack.pop() - 1]:
                if u not in seen:
                    seen.add(u)
                    part.append(u)
                    stack.append(u)
        parts.append(frozenset(part))
    return parts


@memoized(key_prefix="neighbours")
def _neighbours(graph: DualGraph) -> Tuple[FrozenSet[int], ...]:
    """Neighbour sets indexed by v - 1 (repeated edges collapse)."""
    g = nx_graph(graph)
    return tuple(frozenset(g[v]) for v in graph.vertices)


def is_chain(graph: DualGraph) -> bool:
    """True when the edges are exactly 1-2, 2-3, ..., (n-1)-n."""
    return graph.edges == tuple((i, i + 1) for i in range(1, graph.n))


@memoized(key_prefix="validate")
def validate(graph: DualGraph) -> ValidationReport:
    """Standing hypotheses on a resolution graph, as a report. Never raises."""
    problems: List[str] = []

    weights_ok = True
    for v in graph.vertices:
        if graph.weight(v) < 2:
            weights_ok = False
            problems.append(f"vertex {v} has weight {graph.weight(v)} < 2")

    repeats = [edge for edge, count in Counter(graph.edges).items() if count > 1]
    simple_edges = not repeats
    for a, b in repeats:
        problems.append(f"edge {a}-{b} is repeated")

    g = nx_graph(graph)
    connected = nx.is_connected(g)
    if not connected:
        problems.append("graph is disconnected")
    is_tree = simple_edges and nx.is_tree(g)
    if connected and not is_tree and simple_edges:
        problems.append("graph has a cycle")

    if is_chain(graph):
        minors = chain_minors(graph.weights)
    else:
        minors = leading_minors([[-x for x in row] for row in intersection_matrix(graph)])
    negative_definite = all(m > 0 for m in minors)
    if not negative_definite:
        first = next(i for i, m in enumerate(minors, start=1) if m <= 0)
        problems.append(
            f"intersection matrix is not negative definite (leading minor {first} is {minors[first - 1]})"
        )

    return ValidationReport(
        connected=connected,
        is_tree=is_tree,
        simple_edges=simple_edges,
        weights_ok=weights_ok,
        negative_definite=negative_definite,
        leading_minors=minors,
        problems=problems,
    )


def require_valid(graph: DualGraph) -> None:
    report = validate(graph)
    if not report.valid:
        raise GraphError("invalid singularity graph: " + "; ".join(report.problems))


@memoized(key_prefix="path")
def path(graph: DualGraph, i: int, j: int) -> SubgraphSelector:
    """Vertex set of the unique tree path from i to j, both ends included."""
    check_vertex(graph, i)
    check_vertex(graph, j)
    if not validate(graph).is_tree:
        raise GraphError("path is only defined on a connected tree with simple edges")
    parents = _parents(graph, i)
    walk = [j]
    while walk[-1] != i:
        walk.append(parents[walk[-1]])
    return frozenset(walk)


@memoized(key_prefix="parents")
def _parents(graph: DualGraph, root: int) -> Dict[int, int]:
    """Breadth-first parent of every other vertex, rooted at ``root``."""
    return dict(nx.bfs_predecessors(nx_graph(graph), root))


# ---------------------------------------------------------------------------
# Δ
# ---------------------------------------------------------------------------


@memoized(key_prefix="component_delta")
def _component_delta(graph: DualGraph, component: SubgraphSelector) -> int:
    inside = sum(1 for a, b in graph.edges if a in component and b in component)
    if inside == len(component) - 1:
        return abs(_tree_determinant(graph, component))
    return abs(determinant(intersection_matrix(graph, component)))


def _tree_determinant(graph: DualGraph, component: SubgraphSelector) -> int:
    """det(-M) on a connected tree, eliminating from the leaves towards the least label.

    With D(v) the determinant of the subtree below v and P(v) the product of D over its
    children:  D(v) = m_v P(v) - Σ_c P(c) Π_{c' ≠ c} D(c').  Memory stays linear in n.
    """
    neighbours = _neighbours(graph)
    root = min(component)
    parent = {root: 0}
    order = [root]
    for v in order:
        for u in neighbours[v - 1]:
            if u in component and u not in parent:
                parent[u] = v
                order.append(u)
    full: Dict[int, int] = {}
    below: Dict[int, int] = {}
    for v in reversed(order):
        children = [u for u in neighbours[v - 1] if parent.get(u) == v]
        dets = [full.pop(c) for c in children]
        prefix = [1]
        for d in dets:
            prefix.append(prefix[-1] * d)
        suffix = 1
        correction = 0
        for index in range(len(children) - 1, -1, -1):
            correction += below.pop(children[index]) * prefix[index] * suffix
            suffix *= dets[index]
        full[v] = graph.weight(v) * prefix[-1] - correction
        below[v] = prefix[-1]
    return full[root]


def chain_minors(weights: Sequence[int]) -> List[int]:
    """Leading principal minors of -M for a chain: P_k = m_k P_{k-1} - P_{k-2}."""
    minors: List[int] = []
    before, current = 0, 1
    for m in weights:
        before, current = current, m * current - before
        minors.append(current)
    return minors


def delta(graph: DualGraph, deleted: SubgraphSelector = EMPTY) -> int:
    """Δ(Γ ∖ deleted): |det| of the induced intersection matrix, Δ(∅) = 1.

    Computed as the product over connected components of what remains.
    """
    result = 1
    for component in components(graph, frozenset(deleted)):
        result *= _component_delta(graph, component)
    return result


# ---------------------------------------------------------------------------
# Argument checks
# ---------------------------------------------------------------------------


def check_vertex(graph: DualGraph, v: int) -> None:
    if not 1 <= v <= graph.n:
        raise GraphError(f"vertex {v} is outside 1..{graph.n}")


def _check_subset(graph: DualGraph, deleted: Iterable[int]) -> None:
    outside = sorted(v for v in deleted if not 1 <= v <= graph.n)
    if outside:
        raise GraphError(f"vertices {outside} are outside 1..{graph.n}")


