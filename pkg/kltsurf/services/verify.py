"""
Exhaustive verification harnesses.

Each ``verify_*`` function checks one instance and returns a LemmaReport; failures are data,
never exceptions. The ``sweep_*`` functions enumerate instances, partition the work by a
prefix of the enumeration (so partitions can run in worker processes) and merge the partial
summaries in partition order, which keeps counts and witness order identical for any
number of workers.
"""

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from kltsurf.core.cache import memoized
from kltsurf.core.config import settings
from kltsurf.core.errors import GraphError, ParameterError
from kltsurf.schemas.graph import CurveAttachment, DualGraph
from kltsurf.schemas.report import (
    AssertionOutcome,
    AssertionTally,
    ChainSpace,
    KMCase,
    KMConfig,
    LemmaReport,
    OutcomeStatus,
    SweepSummary,
)
from kltsurf.services import discrepancy as disc
from kltsurf.services import oracle
from kltsurf.services.dualgraph import chain, delta, fork, is_chain, path, validate

logger = logging.getLogger(__name__)

DELTA_CEILING = Fraction(1, 6)

# Assertion names of the chain lemma, in report order
CHAIN_ASSERTIONS = (
    "recurrence_head",
    "recurrence_shift",
    "strict_descent",
    "length_floor",
    "unit_step",
    "heavy_vertex",
    "inductive",
)
MULT_ASSERTIONS = ("mult", "delta_gamma", "closed_form", "closed_form_bound")
TAIL_ASSERTIONS = ("budget", "gap", "length", "tail")
ORACLE_ASSERTIONS = ("log_discrepancy", "mult_pullback", "denominator")


def _passed(name: str, lhs=None, rhs=None, relation: Optional[str] = None) -> AssertionOutcome:
    return AssertionOutcome(
        assertion=name, status=OutcomeStatus.PASS, lhs=lhs, rhs=rhs, relation=relation
    )


def _vacuous(name: str, detail: str) -> AssertionOutcome:
    return AssertionOutcome(assertion=name, status=OutcomeStatus.VACUOUS, detail=detail)


def _compare(name: str, lhs, relation: str, rhs, detail: Optional[str] = None) -> AssertionOutcome:
    holds = {
        ">": lhs > rhs,
        ">=": lhs >= rhs,
        "<": lhs < rhs,
        "<=": lhs <= rhs,
        "==": lhs == rhs,
    }[relation]
    return AssertionOutcome(
        assertion=name,
        status=OutcomeStatus.PASS if holds else OutcomeStatus.FAIL,
        lhs=lhs,
        rhs=rhs,
        relation=relation,
        detail=None if holds else detail,
    )


def _first_failure(name: str, checks: Sequence[AssertionOutcome]) -> AssertionOutcome:
    """Collapse per-index checks into one outcome: the first failure, else the last pass."""
    for outcome in checks:
        if outcome.status is OutcomeStatus.FAIL:
            return outcome.model_copy(update={"assertion": name})
    return checks[-1].model_copy(update={"assertion": name})


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------


def enumerate_chains(space: ChainSpace) -> Iterator[DualGraph]:
    """Every chain with length <= max_len and weights in 2..max_weight; by length, then lexicographic."""
    for length in range(1, space.max_len + 1):
        for lead in range(2, space.max_weight + 1):
            yield from _chains_with_prefix(length, lead, space.max_weight)


def _chains_with_prefix(length: int, lead: int, max_weight: int) -> Iterator[DualGraph]:
    for tail in itertools.product(range(2, max_weight + 1), repeat=length - 1):
        yield chain((lead,) + tail)


def chain_suffix_deltas(graph: DualGraph) -> List[int]:
    """S_0..S_{n+1} with S_k = Δ(Γ ∖ path(1, k)), S_0 = Δ(Γ), S_n = 1 and S_{n+1} = 0."""
    n = graph.n
    values = [delta(graph)]
    values.extend(delta(graph, path(graph, 1, k)) for k in range(1, n + 1))
    values.append(0)
    return values


def verify_chain_lemma(graph: DualGraph) -> LemmaReport:
    """Recurrences, descent and size estimates for the suffix determinants of a chain."""
    if not is_chain(graph):
        raise GraphError(f"not a chain: {graph.label()}")
    n = graph.n
    m = {k: graph.weight(k) for k in graph.vertices}
    s = chain_suffix_deltas(graph)
    outcomes: List[AssertionOutcome] = []

    # S_0 = m_1 S_1 - S_2 (S_2 = 0 when n = 1)
    outcomes.append(_compare("recurrence_head", s[0], "==", m[1] * s[1] - s[2]))

    if n >= 3:
        outcomes.append(
            _first_failure(
                "recurrence_shift",
                [
                    _compare("", s[k], "==", m[k + 1] * s[k + 1] - s[k + 2], f"k={k}")
                    for k in range(1, n - 1)
                ],
            )
        )
    else:
        outcomes.append(_vacuous("recurrence_shift", "chain shorter than 3"))

    descent = [_compare("", s[k], ">", s[k + 1], f"k={k}") for k in range(n)]
    descent.append(_compare("", s[n], "==", 1, "S_n"))
    outcomes.append(_first_failure("strict_descent", descent))

    all_two = all(w == 2 for w in m.values())
    relation = "==" if all_two else ">="
    outcomes.append(
        _first_failure(
            "length_floor",
            [_compare("", s[k], relation, n - k + 1, f"k={k}") for k in range(n + 1)],
        )
    )

    if s[0] == s[1] + 1:
        outcomes.append(_compare("unit_step", s[0], "==", n + 1))
    else:
        outcomes.append(_vacuous("unit_step", "Δ(Γ) != Δ(Γ∖{v1}) + 1"))

    heavy = [k for k in graph.vertices if m[k] >= 3]
    if heavy:
        outcomes.append(
            _first_failure(
                "heavy_vertex",
                [_compare("", s[0], ">", (i0 + 1) * s[i0], f"i0={i0}") for i0 in heavy],
            )
        )
    else:
        outcomes.append(_vacuous("heavy_vertex", "all weights are 2"))

    outcomes.append(
        _first_failure(
            "inductive",
            [
                _compare("", s[0], ">=", j * s[j - 1] - (j - 1) * s[j], f"j={j}")
                for j in range(1, n + 1)
            ],
        )
    )
    return LemmaReport(instance_id=graph.label(), lemma="chain_lemma", outcomes=outcomes)


# ---------------------------------------------------------------------------
# lc configurations
# ---------------------------------------------------------------------------


def _unit_curve(n: int, *positions: int) -> CurveAttachment:
    c = [0] * n
    for p in positions:
        c[p - 1] += 1
    return CurveAttachment(c=tuple(c))


def _configs_of_size(case: KMCase, n: int, max_weight: int) -> Iterator[KMConfig]:
    weights = range(2, max_weight + 1)
    if case is KMCase.CASE1:
        for ws in itertools.product(weights, repeat=n):
            curve = CurveAttachment(c=(2,)) if n == 1 else _unit_curve(n, 1, n)
            yield KMConfig(case=case, graph=chain(ws), curve=curve, focus=1)
    elif case is KMCase.CASE3:
        if n < 2:
            return
        for ws in itertools.product(weights, repeat=n):
            graph = chain(ws)
            yield KMConfig(
                case=case, graph=graph, curve=_unit_curve(n, 1), focus=disc.first_heavy_vertex(graph)
            )
    else:
        if n == 3:
            for w in weights:
                yield KMConfig(case=case, graph=chain((2, w, 2)), curve=_unit_curve(3, 2), focus=2)
        elif n >= 4:
            for center in weights:
                for arm in itertools.product(weights, repeat=n - 3):
                    graph = fork((2, 2), center, arm)
                    if validate(graph).negative_definite:
                        yield KMConfig(case=case, graph=graph, curve=_unit_curve(n, n), focus=3)


def enumerate_km_configs(case: KMCase, max_n: int, max_weight: int) -> Iterator[KMConfig]:
    """Every configuration of the given shape with n <= max_n and weights <= max_weight.

    Case 1 starts at n = 1 (curve (2)), Case 3 at n = 2, Case 2 at n = 3.
    Only negative definite graphs are produced.
    """
    if max_n < 1 or max_weight < 2:
        raise ParameterError("need max_n >= 1 and max_weight >= 2")
    for n in range(1, max_n + 1):
        yield from _configs_of_size(case, n, max_weight)


def enumerate_generalized_forks(max_n: int, max_weight: int) -> Iterator[KMConfig]:
    """Forks with the Case 2 attachment whose two leaves are not both (-2)-curves."""
    weights = range(2, max_weight + 1)
    for n in range(4, max_n + 1):
        for a, b in itertools.combinations_with_replacement(weights, 2):
            if a == b == 2:
                continue
            for center in weights:
                for arm in itertools.product(weights, repeat=n - 3):
                    graph = fork((a, b), center, arm)
                    if validate(graph).negative_definite:
                        yield KMConfig(
                            case=KMCase.CASE2, graph=graph, curve=_unit_curve(n, n), focus=3
                        )


def _closed_form_outcomes(config: KMConfig, delta_: Fraction) -> List[AssertionOutcome]:
    graph, curve = config.graph, config.curve
    if config.focus is None:
        return [
            _vacuous("closed_form", "no vertex of weight >= 3"),
            _vacuous("closed_form_bound", "no vertex of weight >= 3"),
        ]
    actual = disc.boundary_discrepancy(graph, curve, config.focus, delta_)
    if config.case is KMCase.CASE1:
        expected = disc.case1_closed_form(graph, delta_)
    elif config.case is KMCase.CASE2:
        expected = disc.case2_closed_form(graph, delta_)
    else:
        expected = disc.case3_closed_form(graph, delta_, config.focus)
    outcomes = [_compare("closed_form", actual, "==", expected, f"k={config.focus}")]
    if config.case is KMCase.CASE3:
        i0 = config.focus
        ceiling = Fraction(i0, delta(graph)) + delta_ / (i0 + 1)
        outcomes.append(_compare("closed_form_bound", actual, "<", ceiling, f"i0={i0}"))
    else:
        outcomes.append(_vacuous("closed_form_bound", "only bounded for Case 3"))
    return outcomes


def verify_mult_bound(
    config: KMConfig, delta_: Fraction, cap_N: Optional[int] = None
) -> LemmaReport:
    """If (Y, (1-δ)C) is δ-lc then mult_{E_k} π*C > δ/(N+1) for all k and Δ(Γ) < (N+1)/δ."""
    delta_ = disc.check_delta(delta_, DELTA_CEILING)
    graph, curve = config.graph, config.curve
    cap_N = graph.n if cap_N is None else cap_N
    if cap_N < graph.n:
        raise ParameterError(f"cap_N={cap_N} is below the vertex count {graph.n}")

    outcomes: List[AssertionOutcome] = []
    k_min, a_min = disc.min_boundary_discrepancy(graph, curve, delta_)
    if a_min >= delta_:
        floor = delta_ / (cap_N + 1)
        mults = disc.mult_pullbacks(graph, curve)
        outcomes.append(
            _first_failure(
                "mult",
                [_compare("", value, ">", floor, f"k={k}") for k, value in enumerate(mults, start=1)],
            )
        )
        outcomes.append(_compare("delta_gamma", Fraction(delta(graph)), "<", (cap_N + 1) / delta_))
    else:
        reason = f"not δ-lc: a(E_{k_min}) = {a_min} < {delta_}"
        outcomes.append(_vacuous("mult", reason))
        outcomes.append(_vacuous("delta_gamma", reason))
    outcomes.extend(_closed_form_outcomes(config, delta_))
    return LemmaReport(
        instance_id=f"{config.label()}|delta={delta_}|N={cap_N}",
        lemma="mult_bound",
        outcomes=outcomes,
    )


def verify_tail_bound(config: KMConfig, delta_: Fraction) -> LemmaReport:
    """Chain-length estimate for a Case 3 chain from a(E_{i0}, Y, (1-δ)C) >= δ.

    Checks i0/δ >= Δ - S > i0·S >= i0(n - i0 + 1), S = Δ(Γ ∖ path(1, i0)),
    and the consequence n - i0 + 1 < 1/δ.
    """
    if config.case is not KMCase.CASE3:
        raise ParameterError("the tail bound applies to Case 3 configurations only")
    delta_ = disc.check_delta(delta_)
    graph, curve, i0 = config.graph, config.curve, config.focus
    instance_id = f"{config.label()}|delta={delta_}"
    if i0 is None:
        return LemmaReport(
            instance_id=instance_id,
            lemma="tail_bound",
            outcomes=[_vacuous(name, "no vertex of weight >= 3") for name in TAIL_ASSERTIONS],
        )
    value = disc.boundary_discrepancy(graph, curve, i0, delta_)
    if value < delta_:
        reason = f"a(E_{i0}) = {value} < {delta_}"
        return LemmaReport(
            instance_id=instance_id,
            lemma="tail_bound",
            outcomes=[_vacuous(name, reason) for name in TAIL_ASSERTIONS],
        )
    n = graph.n
    total = delta(graph)
    s = delta(graph, path(graph, 1, i0))
    outcomes = [
        _compare("budget", i0 / delta_, ">=", Fraction(total - s)),
        _compare("gap", total - s, ">", i0 * s),
        _compare("length", s, ">=", n - i0 + 1),
        _compare("tail", Fraction(n - i0 + 1), "<", 1 / delta_),
    ]
    return LemmaReport(instance_id=instance_id, lemma="tail_bound", outcomes=outcomes)


# ---------------------------------------------------------------------------
# Oracle agreement on trees
# ---------------------------------------------------------------------------


def _tree_from_shape(shape: nx.Graph, weights: Sequence[int]) -> DualGraph:
    edges = tuple((u + 1, v + 1) for u, v in shape.edges())
    return DualGraph(weights=tuple(weights), edges=edges)


@memoized(key_prefix="tree_shapes")
def _tree_shapes(n: int) -> List[nx.Graph]:
    if n == 1:
        single = nx.Graph()
        single.add_node(0)
        return [single]
    return list(nx.nonisomorphic_trees(n))


def enumerate_trees(max_n: int, max_weight: int, min_n: int = 1) -> Iterator[DualGraph]:
    """Every unlabeled tree shape on min_n..max_n vertices with every weight assignment.

    Only valid (negative definite) graphs are produced.
    """
    for n in range(min_n, max_n + 1):
        yield from _trees_of_size(n, max_weight)


def _trees_of_size(n: int, max_weight: int) -> Iterator[DualGraph]:
    for shape in _tree_shapes(n):
        yield from _trees_of_shape(shape, max_weight)


def _trees_of_shape(shape: nx.Graph, max_weight: int) -> Iterator[DualGraph]:
    for weights in itertools.product(range(2, max_weight + 1), repeat=shape.number_of_nodes()):
        graph = _tree_from_shape(shape, weights)
        if validate(graph).valid:
            yield graph


def sample_trees(
    count: int, min_n: int, max_n: int, max_weight: int, seed: int = 0
) -> Iterator[DualGraph]:
    """Seeded random labelled trees (Prüfer sequences) with random weights, valid ones only."""
    if not 1 <= min_n <= max_n:
        raise ParameterError(f"need 1 <= min_n <= max_n, got {min_n}..{max_n}")
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        n = rng.randint(min_n, max_n)
        if n == 1:
            shape = _tree_shapes(1)[0]
        elif n == 2:
            shape = nx.Graph([(0, 1)])
        else:
            shape = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
        weights = [rng.randint(2, max_weight) for _ in range(n)]
        graph = _tree_from_shape(shape, weights)
        if validate(graph).valid:
            produced += 1
            yield graph


def leaf_curve(graph: DualGraph) -> CurveAttachment:
    """Curve meeting every end curve once; a single vertex gets c = (1)."""
    g_degree = [0] * graph.n
    for a, b in graph.edges:
        g_degree[a - 1] += 1
        g_degree[b - 1] += 1
    return CurveAttachment(c=tuple(1 if d <= 1 else 0 for d in g_degree))


def verify_oracle(graph: DualGraph, curve: Optional[CurveAttachment] = None) -> LemmaReport:
    """Compare the Δ-sum formulas with the linear-system oracle at every vertex."""
    curve = leaf_curve(graph) if curve is None else curve
    total = delta(graph)
    closed_a = disc.log_discrepancies(graph).values
    oracle_a = oracle.log_discrepancy_oracle(graph)
    closed_m = disc.mult_pullbacks(graph, curve)
    oracle_m = oracle.mult_pullback_oracle(graph, curve)

    outcomes = [
        _first_failure(
            "log_discrepancy",
            [_compare("", x, "==", y, f"k={k}") for k, (x, y) in enumerate(zip(closed_a, oracle_a), start=1)],
        ),
        _first_failure(
            "mult_pullback",
            [_compare("", x, "==", y, f"k={k}") for k, (x, y) in enumerate(zip(closed_m, oracle_m), start=1)],
        ),
        _first_failure(
            "denominator",
            [
                _compare("", total % value.denominator, "==", 0, f"k={k}")
                for k, value in enumerate(list(closed_a) + list(closed_m), start=1)
            ],
        ),
    ]
    return LemmaReport(
        instance_id=f"{graph.label()}|{curve.label()}", lemma="oracle", outcomes=outcomes
    )


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


class _Accumulator:
    """Partial summary for one partition."""

    def __init__(self, prefix: str = "") -> None:
        self.prefix = prefix
        self.instances = 0
        self.tallies: Dict[str, AssertionTally] = {}
        self.failure_count = 0
        self.failures: List[LemmaReport] = []

    def add(self, report: LemmaReport) -> None:
        self.instances += 1
        for outcome in report.outcomes:
            tally = self.tallies.setdefault(self.prefix + outcome.assertion, AssertionTally())
            if outcome.status is OutcomeStatus.PASS:
                tally.passed += 1
            elif outcome.status is OutcomeStatus.FAIL:
                tally.failed += 1
            else:
                tally.vacuous += 1
        if report.failed:
            self.failure_count += 1
            if len(self.failures) < settings.FAILURE_WITNESS_LIMIT:
                self.failures.append(report)

    def result(self) -> Tuple[int, Dict[str, AssertionTally], int, List[LemmaReport]]:
        return self.instances, self.tallies, self.failure_count, self.failures


def _merge(
    name: str,
    parameters: Dict[str, str],
    partials: Sequence[Tuple[int, Dict[str, AssertionTally], int, List[LemmaReport]]],
    order: Sequence[str],
    require_non_vacuous: Sequence[str] = (),
) -> SweepSummary:
    summary = SweepSummary(
        sweep=name, parameters=parameters, require_non_vacuous=list(require_non_vacuous)
    )
    for key in order:
        summary.tallies[key] = AssertionTally()
    for instances, tallies, failure_count, failures in partials:
        summary.instances += instances
        summary.failure_count += failure_count
        for key, tally in tallies.items():
            merged = summary.tallies.setdefault(key, AssertionTally())
            merged.passed += tally.passed
            merged.failed += tally.failed
            merged.vacuous += tally.vacuous
        room = settings.FAILURE_WITNESS_LIMIT - len(summary.failures)
        summary.failures.extend(failures[: max(room, 0)])
    return summary


def _run_partitions(task: Callable, partitions: Sequence[tuple], workers: Optional[int]) -> list:
    workers = settings.WORKERS if workers is None else workers
    if workers <= 1 or len(partitions) <= 1:
        return [task(*part) for part in partitions]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, *zip(*partitions)))


def _chain_partition(length: int, lead: int, max_weight: int):
    acc = _Accumulator()
    for graph in _chains_with_prefix(length, lead, max_weight):
        acc.add(verify_chain_lemma(graph))
    logger.info("chain lemma: length=%s lead=%s done (%s chains)", length, lead, acc.instances)
    return acc.result()


def sweep_chain_lemma(space: ChainSpace, workers: Optional[int] = None) -> SweepSummary:
    partitions = [
        (length, lead, space.max_weight)
        for length in range(1, space.max_len + 1)
        for lead in range(2, space.max_weight + 1)
    ]
    partials = _run_partitions(_chain_partition, partitions, workers)
    return _merge(
        "chain_lemma",
        {"max_len": str(space.max_len), "max_weight": str(space.max_weight)},
        partials,
        CHAIN_ASSERTIONS,
    )


def _mult_partition(case: KMCase, n: int, max_weight: int, deltas: Tuple[Fraction, ...], cap_N: Optional[int]):
    acc = _Accumulator(prefix=f"{case.value}.")
    for config in _configs_of_size(case, n, max_weight):
        for delta_ in deltas:
            acc.add(verify_mult_bound(config, delta_, cap_N))
    logger.info("mult bound: %s n=%s done (%s instances)", case.value, n, acc.instances)
    return acc.result()


def sweep_mult_bound(
    cases: Sequence[KMCase],
    max_n: int,
    max_weight: int,
    deltas: Sequence[Fraction],
    cap_N: Optional[int] = None,
    workers: Optional[int] = None,
    explore_forks: bool = False,
) -> SweepSummary:
    """Every config of every case, for every δ. Each case must see a non-vacuous 'mult' check.

    With ``explore_forks`` the generalized forks are also checked for δ-lc and logged.
    """
    if not deltas:
        raise ParameterError("at least one delta is required")
    deltas = tuple(disc.check_delta(d, DELTA_CEILING) for d in deltas)
    if cap_N is not None and cap_N < max_n:
        raise ParameterError(f"cap_N={cap_N} is below max_n={max_n}")
    partitions = [
        (case, n, max_weight, deltas, cap_N) for case in cases for n in range(1, max_n + 1)
    ]
    partials = _run_partitions(_mult_partition, partitions, workers)
    if explore_forks and KMCase.CASE2 in cases:
        _log_generalized_forks(max_n, max_weight, deltas)
    return _merge(
        "mult_bound",
        {
            "cases": ",".join(c.value for c in cases),
            "max_n": str(max_n),
            "max_weight": str(max_weight),
            "deltas": ",".join(str(d) for d in deltas),
            "cap_N": "n" if cap_N is None else str(cap_N),
        },
        partials,
        [f"{case.value}.{name}" for case in cases for name in MULT_ASSERTIONS],
        require_non_vacuous=[f"{case.value}.mult" for case in cases],
    )


def _log_generalized_forks(max_n: int, max_weight: int, deltas: Sequence[Fraction]) -> None:
    """Logged for exploration only; these shapes are outside the classified cases."""
    total = lc = 0
    for config in enumerate_generalized_forks(max_n, max_weight):
        for delta_ in deltas:
            total += 1
            if disc.is_delta_lc(config.graph, config.curve, delta_):
                lc += 1
                logger.info("generalized fork is δ-lc: %s delta=%s", config.label(), delta_)
    logger.info("generalized forks: %s of %s instances are δ-lc", lc, total)


def _tail_partition(n: int, max_weight: int, deltas: Tuple[Fraction, ...]):
    acc = _Accumulator()
    for config in _configs_of_size(KMCase.CASE3, n, max_weight):
        for delta_ in deltas:
            acc.add(verify_tail_bound(config, delta_))
    return acc.result()


def sweep_tail_bound(
    max_n: int, max_weight: int, deltas: Sequence[Fraction], workers: Optional[int] = None
) -> SweepSummary:
    if not deltas:
        raise ParameterError("at least one delta is required")
    deltas = tuple(disc.check_delta(d) for d in deltas)
    partitions = [(n, max_weight, deltas) for n in range(2, max_n + 1)]
    partials = _run_partitions(_tail_partition, partitions, workers)
    return _merge(
        "tail_bound",
        {"max_n": str(max_n), "max_weight": str(max_weight), "deltas": ",".join(str(d) for d in deltas)},
        partials,
        TAIL_ASSERTIONS,
        require_non_vacuous=["tail"],
    )


def _oracle_partition(n: int, shape_index: int, max_weight: int):
    acc = _Accumulator()
    for graph in _trees_of_shape(_tree_shapes(n)[shape_index], max_weight):
        acc.add(verify_oracle(graph))
    logger.info("oracle: n=%s shape %s done (%s trees)", n, shape_index, acc.instances)
    return acc.result()


def _oracle_sample_partition(count: int, min_n: int, max_n: int, max_weight: int, seed: int):
    acc = _Accumulator()
    for graph in sample_trees(count, min_n, max_n, max_weight, seed):
        acc.add(verify_oracle(graph))
    logger.info("oracle: %s sampled trees done", acc.instances)
    return acc.result()


def sweep_oracle(
    max_n: int,
    max_weight: int,
    samples: int = 0,
    sample_min_n: Optional[int] = None,
    sample_max_n: Optional[int] = None,
    sample_max_weight: Optional[int] = None,
    seed: int = 0,
    workers: Optional[int] = None,
) -> SweepSummary:
    """All trees up to max_n, then ``samples`` seeded random larger trees."""
    partitions = [
        (n, index, max_weight)
        for n in range(1, max_n + 1)
        for index in range(len(_tree_shapes(n)))
    ]
    partials = _run_partitions(_oracle_partition, partitions, workers)
    parameters = {"max_n": str(max_n), "max_weight": str(max_weight)}
    if samples:
        lo = sample_min_n if sample_min_n is not None else max_n + 1
        hi = sample_max_n if sample_max_n is not None else lo + 4
        sample_weight = sample_max_weight if sample_max_weight is not None else max_weight
        partials.append(_oracle_sample_partition(samples, lo, hi, sample_weight, seed))
        parameters.update(
            {"samples": str(samples), "sample_n": f"{lo}..{hi}", "seed": str(seed)}
        )
    return _merge("oracle", parameters, partials, ORACLE_ASSERTIONS)


SWEEPS: Dict[str, Callable[..., SweepSummary]] = {
    "chain_lemma": sweep_chain_lemma,
    "mult_bound": sweep_mult_bound,
    "tail_bound": sweep_tail_bound,
    "oracle": sweep_oracle,
}


def run_sweep(kind: str, **parameters) -> SweepSummary:
    """Dispatch to the named sweep; ``parameters`` are that sweep's keyword arguments."""
    try:
        runner = SWEEPS[kind]
    except KeyError:
        raise ParameterError(f"unknown sweep {kind!r} (expected one of {', '.join(SWEEPS)})") from None
    summary = runner(**parameters)
    logger.info("%s", summary.summary_line())
    return summary
