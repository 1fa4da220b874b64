import logging
import time
from fractions import Fraction

import pytest

from kltsurf.core.errors import GraphError, ParameterError
from kltsurf.schemas.graph import CurveAttachment
from kltsurf.schemas.report import ChainSpace, KMCase, KMConfig, OutcomeStatus, SweepSummary
from kltsurf.services.dualgraph import chain, fork
from kltsurf.services.verify import (
    CHAIN_ASSERTIONS,
    MULT_ASSERTIONS,
    chain_suffix_deltas,
    enumerate_chains,
    enumerate_generalized_forks,
    enumerate_km_configs,
    sweep_chain_lemma,
    sweep_mult_bound,
    run_sweep,
    sweep_tail_bound,
    verify_chain_lemma,
    verify_mult_bound,
    verify_tail_bound,
)

TENTH = Fraction(1, 10)
DELTAS = (Fraction(1, 7), Fraction(1, 8), Fraction(1, 10), Fraction(1, 100))


class TestChainLemma:
    @pytest.mark.parametrize("max_len, max_weight, size", [(1, 3, 2), (2, 3, 6), (7, 5, 21844)])
    def test_space_size(self, max_len, max_weight, size):
        space = ChainSpace(max_len=max_len, max_weight=max_weight)
        assert space.size == size

    def test_enumeration_order(self):
        chains = [g.weights for g in enumerate_chains(ChainSpace(max_len=2, max_weight=3))]
        assert chains == [(2,), (3,), (2, 2), (2, 3), (3, 2), (3, 3)]

    def test_suffix_deltas(self):
        assert chain_suffix_deltas(chain((2, 3, 2))) == [8, 5, 2, 1, 0]

    def test_all_assertions_reported(self):
        report = verify_chain_lemma(chain((2, 3, 2, 4)))
        assert [o.assertion for o in report.outcomes] == list(CHAIN_ASSERTIONS)
        assert not report.failed
        assert report.outcome("heavy_vertex").status is OutcomeStatus.PASS
        assert report.outcome("unit_step").status is OutcomeStatus.VACUOUS

    def test_all_two_chain(self):
        report = verify_chain_lemma(chain((2, 2, 2, 2)))
        assert report.outcome("unit_step").status is OutcomeStatus.PASS
        assert report.outcome("heavy_vertex").status is OutcomeStatus.VACUOUS
        assert report.outcome("length_floor").relation == "=="

    def test_not_a_chain(self, d4_star):
        with pytest.raises(GraphError, match="not a chain"):
            verify_chain_lemma(d4_star)

    def test_single_vertex_summary_line(self):
        summary = sweep_chain_lemma(ChainSpace(max_len=1, max_weight=2), workers=1)
        assert summary.summary_line() == (
            "chain_lemma max_len=1 max_weight=2: OK; 1 instances; "
            "recurrence_head: 1 pass / 0 fail / 0 vacuous; "
            "recurrence_shift: 0 pass / 0 fail / 1 vacuous; "
            "strict_descent: 1 pass / 0 fail / 0 vacuous; "
            "length_floor: 1 pass / 0 fail / 0 vacuous; "
            "unit_step: 1 pass / 0 fail / 0 vacuous; "
            "heavy_vertex: 0 pass / 0 fail / 1 vacuous; "
            "inductive: 1 pass / 0 fail / 0 vacuous"
        )

    def test_sweep_small(self):
        summary = sweep_chain_lemma(ChainSpace(max_len=6, max_weight=4), workers=1)
        assert summary.ok
        assert summary.instances == ChainSpace(max_len=6, max_weight=4).size

    def test_worker_count_does_not_change_summary(self):
        space = ChainSpace(max_len=4, max_weight=3)
        assert sweep_chain_lemma(space, workers=1) == sweep_chain_lemma(space, workers=2)

    @pytest.mark.slow
    def test_sweep_full_space(self):
        summary = sweep_chain_lemma(ChainSpace(max_len=7, max_weight=5), workers=1)
        assert summary.ok
        assert summary.instances == 21844


class TestConfigurations:
    def test_case3_small(self):
        configs = list(enumerate_km_configs(KMCase.CASE3, max_n=2, max_weight=3))
        assert [c.graph.weights for c in configs] == [(2, 2), (2, 3), (3, 2), (3, 3)]
        assert [c.focus for c in configs] == [None, 2, 1, 1]
        assert all(c.curve.c == (1, 0) for c in configs)

    def test_case1_small(self):
        configs = list(enumerate_km_configs(KMCase.CASE1, max_n=2, max_weight=3))
        assert len(configs) == 6
        assert configs[0].curve.c == (2,)
        assert configs[-1].curve.c == (1, 1)

    def test_case2_shapes(self):
        configs = list(enumerate_km_configs(KMCase.CASE2, max_n=4, max_weight=2))
        assert [c.graph.weights for c in configs] == [(2, 2, 2), (2, 2, 2, 2)]
        assert configs[0].curve.c == (0, 1, 0)
        assert configs[1].graph.edges == ((1, 3), (2, 3), (3, 4))
        assert configs[1].focus == 3

    def test_bad_ranges(self):
        with pytest.raises(ParameterError):
            list(enumerate_km_configs(KMCase.CASE1, max_n=0, max_weight=3))

    def test_generalized_forks_skip_du_val_leaves(self):
        for config in enumerate_generalized_forks(5, 3):
            assert config.graph.weights[:2] != (2, 2)


class TestMultBound:
    def test_not_lc_is_vacuous(self):
        config = KMConfig(
            case=KMCase.CASE2, graph=chain((2, 3, 2)), curve=CurveAttachment(c=(0, 1, 0)), focus=2
        )
        report = verify_mult_bound(config, TENTH)
        assert report.instance_id == "CASE2|w=2,3,2|e=1-2,2-3|c=0,1,0|delta=1/10|N=3"
        assert report.outcome("mult").status is OutcomeStatus.VACUOUS
        assert report.outcome("closed_form").status is OutcomeStatus.PASS

    def test_d5_fork(self, d5_fork):
        graph, curve = d5_fork
        config = KMConfig(case=KMCase.CASE2, graph=graph, curve=curve, focus=3)
        report = verify_mult_bound(config, TENTH)
        assert [o.assertion for o in report.outcomes] == list(MULT_ASSERTIONS)
        assert report.outcome("mult").status is OutcomeStatus.PASS
        assert report.outcome("delta_gamma").status is OutcomeStatus.PASS
        assert report.outcome("closed_form_bound").status is OutcomeStatus.VACUOUS

    def test_case3_bound_checked(self):
        config = KMConfig(
            case=KMCase.CASE3, graph=chain((2, 3)), curve=CurveAttachment(c=(1, 0)), focus=2
        )
        report = verify_mult_bound(config, TENTH)
        assert not report.failed
        assert report.outcome("closed_form_bound").status is OutcomeStatus.PASS

    def test_delta_must_be_below_sixth(self, d5_fork):
        graph, curve = d5_fork
        config = KMConfig(case=KMCase.CASE2, graph=graph, curve=curve, focus=3)
        with pytest.raises(ParameterError):
            verify_mult_bound(config, Fraction(1, 6))

    def test_cap_below_vertex_count(self, d5_fork):
        graph, curve = d5_fork
        config = KMConfig(case=KMCase.CASE2, graph=graph, curve=curve, focus=3)
        with pytest.raises(ParameterError):
            verify_mult_bound(config, TENTH, cap_N=4)

    def test_sweep_all_cases(self):
        summary = sweep_mult_bound(list(KMCase), max_n=5, max_weight=4, deltas=DELTAS, workers=1)
        assert summary.ok
        assert summary.failure_count == 0
        for case in KMCase:
            assert summary.tallies[f"{case.value}.mult"].non_vacuous > 0
            assert summary.tallies[f"{case.value}.closed_form"].failed == 0

    def test_sweep_requires_deltas(self):
        with pytest.raises(ParameterError):
            sweep_mult_bound([KMCase.CASE1], max_n=3, max_weight=3, deltas=[])

    def test_generalized_forks_only_on_request(self, caplog):
        caplog.set_level(logging.INFO, logger="kltsurf.services.verify")
        sweep_mult_bound([KMCase.CASE2], max_n=4, max_weight=3, deltas=[TENTH], workers=1)
        assert not any("generalized forks" in r.getMessage() for r in caplog.records)

        sweep_mult_bound(
            [KMCase.CASE2], max_n=4, max_weight=3, deltas=[TENTH], workers=1, explore_forks=True
        )
        assert any("generalized forks:" in r.getMessage() for r in caplog.records)


class TestTailBound:
    def test_chain_23(self):
        config = KMConfig(
            case=KMCase.CASE3, graph=chain((2, 3)), curve=CurveAttachment(c=(1, 0)), focus=2
        )
        report = verify_tail_bound(config, TENTH)
        assert [o.status for o in report.outcomes] == [OutcomeStatus.PASS] * 4

    def test_all_two_chain_is_vacuous(self):
        config = KMConfig(case=KMCase.CASE3, graph=chain((2, 2)), curve=CurveAttachment(c=(1, 0)))
        report = verify_tail_bound(config, TENTH)
        assert all(o.status is OutcomeStatus.VACUOUS for o in report.outcomes)

    def test_other_cases_rejected(self):
        config = KMConfig(
            case=KMCase.CASE2,
            graph=fork((2, 2), 2, (2,)),
            curve=CurveAttachment(c=(0, 0, 0, 1)),
            focus=3,
        )
        with pytest.raises(ParameterError):
            verify_tail_bound(config, TENTH)

    def test_sweep(self):
        summary = sweep_tail_bound(6, 4, [Fraction(1, 7), TENTH], workers=1)
        assert summary.ok
        assert summary.tallies["tail"].passed > 0


def test_starved_sweep_is_not_ok():
    summary = SweepSummary(sweep="mult_bound", require_non_vacuous=["CASE1.mult"])
    assert summary.starved == ["CASE1.mult"]
    assert not summary.ok
    assert "FAILED (no non-vacuous instances: CASE1.mult)" in summary.summary_line()


def test_run_sweep_dispatch():
    summary = run_sweep("chain_lemma", space=ChainSpace(max_len=2, max_weight=2), workers=1)
    assert summary.sweep == "chain_lemma"
    assert summary.instances == 2
    with pytest.raises(ParameterError, match="unknown sweep"):
        run_sweep("nonsense")


@pytest.mark.slow
def test_mult_bound_default_ranges():
    started = time.monotonic()
    summary = sweep_mult_bound(list(KMCase), max_n=6, max_weight=6, deltas=DELTAS, workers=1)
    assert time.monotonic() - started < 120
    assert summary.ok
    for case in KMCase:
        assert summary.tallies[f"{case.value}.mult"].non_vacuous > 0
        assert summary.tallies[f"{case.value}.closed_form"].failed == 0
