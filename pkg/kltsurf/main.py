"""
kltsurf command line.

    python -m kltsurf delta chain222.graph
    python -m kltsurf hj 5 2
    python -m kltsurf verify-chain-lemma --max-len 7 --max-weight 5

Results go to stdout, progress and diagnostics to stderr. Exit status: 0 success,
1 verification failure (or an invalid graph for ``validate``), 2 usage or input error.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from kltsurf.core.config import settings
from kltsurf.core.errors import GraphFormatError, KltError, ParameterError
from kltsurf.core.serializers import (
    format_approx,
    format_int_list,
    format_rational,
    parse_rational,
    to_json,
)
from kltsurf.schemas.bounds import BoundParams
from kltsurf.schemas.command import Command, OutputFormat
from kltsurf.schemas.graph import GraphDocument
from kltsurf.schemas.report import ChainSpace, KMCase, SweepSummary
from kltsurf.services import bounds as bounds_service
from kltsurf.services import discrepancy as disc
from kltsurf.services import verify
from kltsurf.services.dualgraph import delta, validate
from kltsurf.services.graph_file import load_graph
from kltsurf.services.hj import chain_from_quotient, cyclic_quotient, hj_expansion

load_dotenv()

logger = logging.getLogger("kltsurf")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Suite defaults used when a sweep flag is omitted
DEFAULT_DELTAS = ("1/7", "1/8", "1/10", "1/100")


def configure_logging() -> None:
    logging.basicConfig(
        level=logging.INFO if settings.DEBUG else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _vertex_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose errors exit with status 2 and a one-line message."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kltsurf", description="Exact computations on klt surface dual graphs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_format(p: argparse.ArgumentParser, default: str = "text") -> argparse.ArgumentParser:
        p.add_argument("--format", choices=[f.value for f in OutputFormat], default=default)
        return p

    p = with_format(sub.add_parser("delta", help="Δ of the graph, optionally after deleting vertices"))
    p.add_argument("file")
    p.add_argument("--remove", type=_vertex_list, default=[])

    p = with_format(sub.add_parser("validate", help="standing hypotheses on a resolution graph"))
    p.add_argument("file")

    p = with_format(sub.add_parser("discrepancy", help="a(E_k, Y, 0), or a(E_k, Y, (1-δ)C) with --delta"))
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--delta", type=_rational)

    p = with_format(sub.add_parser("mult", help="mult_{E_k} π*C for the file's curve"))
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)

    p = with_format(sub.add_parser("lc-test", help="is (Y, (1-δ)C) δ-lc over the point"))
    p.add_argument("file")
    p.add_argument("--delta", type=_rational, required=True)

    p = with_format(sub.add_parser("hj", help="Hirzebruch-Jung expansion of n/a"))
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)

    p = with_format(sub.add_parser("verify-chain-lemma", help="suffix-determinant lemma over all chains"), "json")
    p.add_argument("--max-len", type=int, default=7)
    p.add_argument("--max-weight", type=int, default=5)

    p = with_format(sub.add_parser("verify-mult-bound", help="multiplicity bound over lc configurations"), "json")
    p.add_argument("--case", choices=["1", "2", "3", "all"], default="all")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--delta", type=_rational, action="append", dest="deltas")
    p.add_argument("--cap-n", type=int, dest="cap_n")
    p.add_argument("--explore-forks", action="store_true", help="also log which generalized forks are δ-lc")

    p = with_format(sub.add_parser("verify-tail-bound", help="chain-length estimate for Case 3"), "json")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--delta", type=_rational, action="append", dest="deltas")

    p = with_format(sub.add_parser("verify-oracle", help="Δ-sum formulas against the linear-system oracle"), "json")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-weight", type=int, default=5)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--sample-min-n", type=int)
    p.add_argument("--sample-max-n", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = with_format(sub.add_parser("bounds", help="bound sheet for (ε, δ)"), "json")
    p.add_argument("--epsilon", type=_rational, required=True)
    p.add_argument("--delta", type=_rational)
    p.add_argument("--best-delta-grid", type=int, help="also report the exploratory best δ on this grid")

    p = with_format(sub.add_parser("ambro", help="threshold of the toric examples at ε = 1/q"))
    p.add_argument("--q", type=int, required=True)

    p = with_format(sub.add_parser("sweep", help="exact bound checks over ε = 1/q"))
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--qmin", type=int, default=4)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default=settings.APP_HOST)
    p.add_argument("--port", type=int, default=settings.APP_PORT)
    return parser


def parse_command(argv: Sequence[str]) -> Command:
    namespace = build_parser().parse_args(list(argv))
    flags = {
        key: value
        for key, value in vars(namespace).items()
        if key not in {"command", "file", "format"}
    }
    return Command(
        name=namespace.command,
        path=getattr(namespace, "file", None),
        output=getattr(namespace, "format", OutputFormat.TEXT.value),
        flags=flags,
    )


# ---------------------------------------------------------------------------
# Subcommands. Each writes to stdout and returns an exit code.
# ---------------------------------------------------------------------------


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _yes_no(flag: bool) -> str:
    return "true" if flag else "false"


def _load(command: Command) -> GraphDocument:
    return load_graph(command.path)


def _cmd_delta(command: Command) -> int:
    document = _load(command)
    removed = frozenset(command.flag("remove", []))
    value = delta(document.graph, removed)
    if command.output is OutputFormat.JSON:
        _emit(to_json({"removed": sorted(removed), "delta": value}))
    else:
        _emit(str(value))
    return EXIT_OK


def _cmd_validate(command: Command) -> int:
    report = validate(_load(command).graph)
    if command.output is OutputFormat.JSON:
        _emit(to_json({"valid": report.valid, **report.model_dump(mode="json")}))
    else:
        lines = [
            f"valid: {_yes_no(report.valid)}",
            f"tree: {_yes_no(report.is_tree)}",
            f"simple edges: {_yes_no(report.simple_edges)}",
            f"weights >= 2: {_yes_no(report.weights_ok)}",
            f"negative definite: {_yes_no(report.negative_definite)}",
            "leading minors: " + ", ".join(str(m) for m in report.leading_minors),
        ]
        lines.extend(f"problem: {problem}" for problem in report.problems)
        _emit("\n".join(lines))
    return EXIT_OK if report.valid else EXIT_FAILED


def _cmd_discrepancy(command: Command) -> int:
    document = _load(command)
    k = command.flag("vertex")
    delta_ = command.flag("delta")
    if delta_ is None:
        value = disc.log_discrepancy(document.graph, k)
    else:
        value = disc.boundary_discrepancy(document.graph, document.curve, k, delta_)
    if command.output is OutputFormat.JSON:
        _emit(to_json({"vertex": k, "delta": None if delta_ is None else format_rational(delta_), "value": format_rational(value)}))
    else:
        _emit(format_rational(value))
    return EXIT_OK


def _cmd_mult(command: Command) -> int:
    document = _load(command)
    if document.curve is None:
        raise GraphFormatError("graph file has no 'curve:' line", path=command.path)
    k = command.flag("vertex")
    value = disc.mult_pullback(document.graph, document.curve, k)
    if command.output is OutputFormat.JSON:
        _emit(to_json({"vertex": k, "value": format_rational(value)}))
    else:
        _emit(format_rational(value))
    return EXIT_OK


def _cmd_lc_test(command: Command) -> int:
    document = _load(command)
    delta_ = disc.check_delta(command.flag("delta"))
    k, value = disc.min_boundary_discrepancy(document.graph, document.curve, delta_)
    holds = value >= delta_
    if command.output is OutputFormat.JSON:
        _emit(to_json({"delta": format_rational(delta_), "delta_lc": holds, "min_vertex": k, "min_value": format_rational(value)}))
    else:
        pair = "a(E_k, Y, (1-δ)C)" if document.curve is not None else "a(E_k, Y, 0)"
        _emit(f"δ-lc: {_yes_no(holds)}\nmin {pair} = {format_rational(value)} at k = {k}")
    return EXIT_OK


def _cmd_hj(command: Command) -> int:
    q = cyclic_quotient(command.flag("n"), command.flag("a"))
    expansion = hj_expansion(q)
    value = delta(chain_from_quotient(q))
    matches = value == q.n
    if command.output is OutputFormat.JSON:
        _emit(to_json({"n": q.n, "a": q.a, "expansion": expansion, "delta": value, "matches": matches}))
    else:
        verdict = "matches n" if matches else f"does not match n = {q.n}"
        _emit(f"{format_int_list(expansion)}\nΔ = {value} ({verdict})")
    return EXIT_OK if matches else EXIT_FAILED


def _report_sweep(command: Command, summary: SweepSummary) -> int:
    if command.output is OutputFormat.JSON:
        sys.stderr.write(summary.summary_line() + "\n")
        _emit(to_json(summary))
    else:
        _emit(summary.summary_line())
        if summary.failures:
            _emit(to_json(summary.failures))
    return EXIT_OK if summary.ok else EXIT_FAILED


def _positive(value: int, name: str, minimum: int = 1) -> int:
    if value < minimum:
        raise ParameterError(f"{name} must be at least {minimum}, got {value}")
    return value


def _cmd_verify_chain_lemma(command: Command) -> int:
    space = ChainSpace(
        max_len=_positive(command.flag("max_len"), "--max-len"),
        max_weight=_positive(command.flag("max_weight"), "--max-weight", 2),
    )
    return _report_sweep(command, verify.run_sweep("chain_lemma", space=space))


def _deltas(command: Command) -> List[Fraction]:
    return command.flag("deltas") or [parse_rational(d) for d in DEFAULT_DELTAS]


def _cmd_verify_mult_bound(command: Command) -> int:
    case = command.flag("case")
    cases = list(KMCase) if case == "all" else [KMCase.from_tag(case)]
    summary = verify.run_sweep(
        "mult_bound",
        cases=cases,
        max_n=_positive(command.flag("max_n"), "--max-n"),
        max_weight=_positive(command.flag("max_weight"), "--max-weight", 2),
        deltas=_deltas(command),
        cap_N=command.flag("cap_n"),
        explore_forks=command.flag("explore_forks", False),
    )
    return _report_sweep(command, summary)


def _cmd_verify_tail_bound(command: Command) -> int:
    summary = verify.run_sweep(
        "tail_bound",
        max_n=_positive(command.flag("max_n"), "--max-n", 2),
        max_weight=_positive(command.flag("max_weight"), "--max-weight", 2),
        deltas=_deltas(command),
    )
    return _report_sweep(command, summary)


def _cmd_verify_oracle(command: Command) -> int:
    summary = verify.run_sweep(
        "oracle",
        max_n=_positive(command.flag("max_n"), "--max-n"),
        max_weight=_positive(command.flag("max_weight"), "--max-weight", 2),
        samples=_positive(command.flag("samples"), "--samples", 0),
        sample_min_n=command.flag("sample_min_n"),
        sample_max_n=command.flag("sample_max_n"),
        seed=command.flag("seed"),
    )
    return _report_sweep(command, summary)


def _cmd_bounds(command: Command) -> int:
    params = BoundParams(epsilon=command.flag("epsilon"), delta=command.flag("delta"))
    sheet = bounds_service.bound_sheet(params)
    grid = command.flag("best_delta_grid")
    choice = bounds_service.best_delta(params.epsilon, grid) if grid else None
    if command.output is OutputFormat.JSON:
        payload = sheet.model_dump(mode="json")
        if choice is not None:
            payload["best_delta_exploratory"] = choice.model_dump(mode="json")
        _emit(to_json(payload))
        return EXIT_OK

    rows = [
        (name, value)
        for name, value in sheet.model_dump().items()
        if name != "aux" and value is not None
    ]
    if sheet.aux is not None:
        rows.extend((f"aux.{name}", value) for name, value in sheet.aux.model_dump().items() if name != "delta")
    if choice is not None:
        rows.append(("best_delta (exploratory)", choice.delta))
        rows.append(("best_delta t0 (exploratory)", choice.t0_lb))
    width = max(len(name) for name, _ in rows)
    exact = max(len(format_rational(value)) for _, value in rows)
    _emit(
        "\n".join(
            f"{name:<{width}}  {format_rational(value):>{exact}}  {format_approx(value)}"
            for name, value in rows
        )
    )
    return EXIT_OK


def _cmd_ambro(command: Command) -> int:
    q = command.flag("q")
    t = bounds_service.ambro_example_t(q)
    ratio = t * 400 * q**3 / 3
    payload: Dict[str, object] = {"q": q, "t": format_rational(t), "ratio_to_floor": format_rational(ratio)}
    mu2 = None
    if q >= 4:
        mu2 = bounds_service.mu2_lower_bound(Fraction(1, q))
        payload["mu2_lb"] = format_rational(mu2)
    if command.output is OutputFormat.JSON:
        _emit(to_json(payload))
    else:
        lines = [
            f"t = {format_rational(t)}  {format_approx(t)}",
            f"t / (3ε³/400) = {format_rational(ratio)}  {format_approx(ratio)}",
        ]
        if mu2 is not None:
            lines.append(f"mu2_lb(1/{q}) = {format_rational(mu2)}  {format_approx(mu2)}")
        _emit("\n".join(lines))
    return EXIT_OK


def _cmd_sweep(command: Command) -> int:
    report = bounds_service.sweep(q_max=command.flag("qmax"), q_min=command.flag("qmin"))
    if command.output is OutputFormat.JSON:
        _emit(to_json({"ok": report.ok, **report.model_dump(mode="json")}))
    else:
        lines = [f"q = {report.q_min}..{report.q_max}: {'OK' if report.ok else 'FAILED'}"]
        for check in report.checks:
            status = "ok" if check.failed == 0 else f"FAILED first at q = {check.first_failure_q}"
            lines.append(f"  {check.name}: {check.passed} pass / {check.failed} fail ({status})")
        _emit("\n".join(lines))
    return EXIT_OK if report.ok else EXIT_FAILED


def _cmd_serve(command: Command) -> int:
    import uvicorn

    uvicorn.run(
        "kltsurf.api.app:app",
        host=command.flag("host"),
        port=command.flag("port"),
        log_level="info" if settings.DEBUG else "warning",
    )
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Command], int]] = {
    "delta": _cmd_delta,
    "validate": _cmd_validate,
    "discrepancy": _cmd_discrepancy,
    "mult": _cmd_mult,
    "lc-test": _cmd_lc_test,
    "hj": _cmd_hj,
    "verify-chain-lemma": _cmd_verify_chain_lemma,
    "verify-mult-bound": _cmd_verify_mult_bound,
    "verify-tail-bound": _cmd_verify_tail_bound,
    "verify-oracle": _cmd_verify_oracle,
    "bounds": _cmd_bounds,
    "ambro": _cmd_ambro,
    "sweep": _cmd_sweep,
    "serve": _cmd_serve,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and dispatch; returns the process exit code."""
    argv = sys.argv[1:] if argv is None else argv
    try:
        command = parse_command(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    try:
        return COMMANDS[command.name](command)
    except KltError as e:
        sys.stderr.write(f"error: {e}\n")
    except ValidationError as e:
        first = e.errors()[0]
        sys.stderr.write(f"error: {first['msg'].removeprefix('Value error, ')}\n")
    return EXIT_USAGE


def main() -> None:
    configure_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
