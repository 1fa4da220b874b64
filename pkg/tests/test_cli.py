import json

import pytest

from kltsurf.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, parse_command, run
from kltsurf.schemas.command import OutputFormat
from kltsurf.services import oracle


@pytest.fixture
def cli(capsys):
    def invoke(*argv):
        code = run([str(arg) for arg in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_parse_command():
    command = parse_command(["delta", "g.graph", "--remove", "1,3", "--format", "json"])
    assert command.name == "delta"
    assert command.path == "g.graph"
    assert command.output is OutputFormat.JSON
    assert command.flag("remove") == [1, 3]


def test_explore_forks_flag():
    assert parse_command(["verify-mult-bound"]).flag("explore_forks") is False
    assert parse_command(["verify-mult-bound", "--explore-forks"]).flag("explore_forks") is True


class TestGraphCommands:
    def test_delta(self, cli, corpus_dir):
        assert cli("delta", corpus_dir / "chain222.graph") == (EXIT_OK, "4\n", "")

    def test_delta_remove(self, cli, corpus_dir):
        code, out, _ = cli("delta", corpus_dir / "d4_star.graph", "--remove", "4")
        assert (code, out) == (EXIT_OK, "8\n")

    def test_delta_json(self, cli, corpus_dir):
        code, out, _ = cli("delta", corpus_dir / "chain32.graph", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out) == {"removed": [], "delta": 5}

    def test_delta_json_input(self, cli, corpus_dir):
        assert cli("delta", corpus_dir / "single4.json")[1] == "4\n"

    def test_validate_valid(self, cli, corpus_dir):
        code, out, _ = cli("validate", corpus_dir / "chain32.graph")
        assert code == EXIT_OK
        assert out == (
            "valid: true\ntree: true\nsimple edges: true\nweights >= 2: true\n"
            "negative definite: true\nleading minors: 3, 5\n"
        )

    def test_validate_invalid(self, cli, corpus_dir):
        code, out, _ = cli("validate", corpus_dir / "bad_weight.graph")
        assert code == EXIT_FAILED
        assert out == (
            "valid: false\ntree: true\nsimple edges: true\nweights >= 2: false\n"
            "negative definite: true\nleading minors: 1, 1\n"
            "problem: vertex 1 has weight 1 < 2\n"
        )

    def test_malformed_file(self, cli, corpus_dir):
        code, out, err = cli("delta", corpus_dir / "malformed.graph")
        assert code == EXIT_USAGE
        assert out == ""
        assert "malformed.graph:3: expected integers after 'edge:', got '1 x'" in err

    def test_discrepancy(self, cli, corpus_dir):
        assert cli("discrepancy", corpus_dir / "chain32.graph", "--vertex", 1)[1] == "3/5\n"
        assert cli("discrepancy", corpus_dir / "single3.graph", "--vertex", 1)[1] == "2/3\n"

    def test_boundary_discrepancy(self, cli, corpus_dir):
        code, out, _ = cli(
            "discrepancy", corpus_dir / "chain22_curve.graph", "--vertex", 1, "--delta", "1/10"
        )
        assert (code, out) == (EXIT_OK, "2/5\n")

    def test_discrepancy_of_invalid_graph(self, cli, corpus_dir):
        code, _, err = cli("discrepancy", corpus_dir / "bad_weight.graph", "--vertex", 1)
        assert code == EXIT_USAGE
        assert "invalid singularity graph" in err

    def test_mult(self, cli, corpus_dir):
        assert cli("mult", corpus_dir / "chain22_curve.graph", "--vertex", 2)[1] == "1/3\n"

    def test_mult_needs_curve(self, cli, corpus_dir):
        code, _, err = cli("mult", corpus_dir / "chain32.graph", "--vertex", 1)
        assert code == EXIT_USAGE
        assert "no 'curve:' line" in err

    def test_lc_test_fork(self, cli, corpus_dir):
        code, out, _ = cli("lc-test", corpus_dir / "case2_fork.json", "--delta", "1/10")
        assert code == EXIT_OK
        assert out == "δ-lc: true\nmin a(E_k, Y, (1-δ)C) = 1/10 at k = 3\n"

    def test_lc_test_case1(self, cli, corpus_dir):
        out = cli("lc-test", corpus_dir / "case1_chain.graph", "--delta", "1/10")[1]
        assert out == "δ-lc: true\nmin a(E_k, Y, (1-δ)C) = 1/10 at k = 1\n"

    def test_lc_test_without_curve(self, cli, corpus_dir):
        out = cli("lc-test", corpus_dir / "single3.graph", "--delta", "1/10")[1]
        assert out == "δ-lc: true\nmin a(E_k, Y, 0) = 2/3 at k = 1\n"

    def test_lc_test_json(self, cli, corpus_dir):
        out = cli("lc-test", corpus_dir / "chain22_curve.graph", "--delta", "1/2", "--format", "json")[1]
        # a(E_1) = 1 - (1/2)(2/3) = 2/3 and a(E_2) = 1 - (1/2)(1/3) = 5/6
        assert json.loads(out) == {
            "delta": "1/2",
            "delta_lc": True,
            "min_vertex": 1,
            "min_value": "2/3",
        }

    def test_bad_delta(self, cli, corpus_dir):
        code, _, err = cli("lc-test", corpus_dir / "single3.graph", "--delta", "3/2")
        assert code == EXIT_USAGE
        assert "delta must lie in (0, 1)" in err


class TestQuotients:
    def test_hj(self, cli):
        assert cli("hj", 5, 2) == (EXIT_OK, "[3, 2]\nΔ = 5 (matches n)\n", "")

    def test_hj_json(self, cli):
        out = cli("hj", 19, 7, "--format", "json")[1]
        assert json.loads(out) == {"n": 19, "a": 7, "expansion": [3, 4, 2], "delta": 19, "matches": True}

    def test_hj_long_chain(self, cli):
        code, out, _ = cli("hj", 20001, 20000)
        assert code == EXIT_OK
        assert out.endswith("Δ = 20001 (matches n)\n")

    def test_hj_not_coprime(self, cli):
        code, out, err = cli("hj", 6, 4)
        assert code == EXIT_USAGE
        assert out == ""
        assert err.startswith("error: gcd(a, n) must be 1")


class TestBoundCommands:
    def test_bounds_json(self, cli):
        code, out, _ = cli("bounds", "--epsilon", "1/4")
        sheet = json.loads(out)
        assert code == EXIT_OK
        assert sheet["t0_lb"] == "1/8442"
        assert sheet["volume_bound"] == "819200"
        assert sheet["dpf_bound_tight"] == "641592"
        assert sheet["divisor_case_lb"] == "1/90"
        assert sheet["aux"]["coeff_floor"] == "1/528"

    def test_bounds_text(self, cli):
        out = cli("bounds", "--epsilon", "1/4", "--format", "text")[1]
        rows = {line.split()[0]: line.split()[1] for line in out.splitlines()}
        assert rows["t0_lb"] == "1/8442"
        assert rows["aux.rho_cap"] == "63"

    def test_bounds_best_delta(self, cli):
        out = cli("bounds", "--epsilon", "1/4", "--best-delta-grid", 10)[1]
        choice = json.loads(out)["best_delta_exploratory"]
        assert choice["grid"] == 10
        assert choice["canonical"] is False

    def test_bounds_epsilon_out_of_range(self, cli):
        code, _, err = cli("bounds", "--epsilon", "1/3")
        assert code == EXIT_USAGE
        assert "epsilon must lie in (0, 1/3)" in err

    def test_bounds_float_rejected(self, cli):
        code, _, err = cli("bounds", "--epsilon", "0.25")
        assert code == EXIT_USAGE
        assert "not an exact rational" in err

    def test_ambro(self, cli):
        out = cli("ambro", "--q", 2)[1]
        assert out == "t = 1/21  ≈ 0.047619\nt / (3ε³/400) = 3200/63  ≈ 50.7937\n"

    def test_ambro_json_with_mu2(self, cli):
        payload = json.loads(cli("ambro", "--q", 4, "--format", "json")[1])
        assert payload["mu2_lb"] == "1/8442"

    def test_sweep(self, cli):
        code, out, _ = cli("sweep", "--qmax", 10)
        assert code == EXIT_OK
        assert out.splitlines()[0] == "q = 4..10: OK"
        assert "  t0_monotone_in_epsilon: 7 pass / 0 fail (ok)" in out.splitlines()


class TestVerifyCommands:
    def test_chain_lemma_text(self, cli):
        code, out, _ = cli("verify-chain-lemma", "--max-len", 3, "--max-weight", 3, "--format", "text")
        assert code == EXIT_OK
        assert out.startswith("chain_lemma max_len=3 max_weight=3: OK; 14 instances; ")

    def test_chain_lemma_json_summary_on_stderr(self, cli):
        code, out, err = cli("verify-chain-lemma", "--max-len", 2, "--max-weight", 3)
        summary = json.loads(out)
        assert code == EXIT_OK
        assert summary["ok"] is True
        assert summary["instances"] == 6
        assert err.startswith("chain_lemma max_len=2 max_weight=3: OK")

    def test_mult_bound(self, cli):
        code, out, _ = cli(
            "verify-mult-bound", "--case", "2", "--max-n", 5, "--max-weight", 3,
            "--delta", "1/10", "--format", "text",
        )
        assert code == EXIT_OK
        assert out.startswith("mult_bound cases=CASE2 max_n=5 max_weight=3 deltas=1/10 cap_N=n: OK")

    def test_mult_bound_delta_too_large(self, cli):
        code, _, err = cli("verify-mult-bound", "--case", "1", "--max-n", 2, "--delta", "1/6")
        assert code == EXIT_USAGE
        assert "delta must lie in (0, 1/6)" in err

    def test_tail_bound(self, cli):
        code, out, _ = cli("verify-tail-bound", "--max-n", 4, "--max-weight", 3, "--format", "text")
        assert code == EXIT_OK
        assert "deltas=1/7,1/8,1/10,1/100" in out

    def test_oracle(self, cli):
        code, out, _ = cli("verify-oracle", "--max-n", 4, "--max-weight", 3, "--format", "text")
        assert code == EXIT_OK
        assert out.startswith("oracle max_n=4 max_weight=3: OK")

    def test_failing_sweep_prints_witnesses_in_text_mode(self, cli, monkeypatch):
        real = oracle.log_discrepancy_oracle
        monkeypatch.setattr(oracle, "log_discrepancy_oracle", lambda graph: [a + 1 for a in real(graph)])
        code, out, _ = cli("verify-oracle", "--max-n", 2, "--max-weight", 3, "--format", "text")
        summary_line, witnesses = out.split("\n", 1)
        assert code == EXIT_FAILED
        assert "FAILED" in summary_line
        failures = json.loads(witnesses)
        assert failures[0]["instance_id"] == "w=2|e=|c=1"
        assert failures[0]["outcomes"][0]["status"] == "FAIL"

    def test_zero_length_rejected(self, cli):
        code, _, err = cli("verify-chain-lemma", "--max-len", 0)
        assert code == EXIT_USAGE
        assert "--max-len must be at least 1" in err


class TestUsage:
    def test_unknown_command(self, cli):
        code, out, err = cli("frobnicate")
        assert code == EXIT_USAGE
        assert out == ""
        assert "invalid choice" in err

    def test_missing_argument(self, cli):
        assert cli("lc-test")[0] == EXIT_USAGE

    def test_bad_rational_flag(self, cli, corpus_dir):
        code, _, err = cli("lc-test", corpus_dir / "single3.graph", "--delta", "x")
        assert code == EXIT_USAGE
        assert "not an exact rational" in err
