"""Command-line interface.

Subcommands: analyze (bounds and optional exact spark for a matrix file),
certify (uniqueness certificate for a candidate solution), gen (matrix
generators), bench (bound-vs-exact table for the spiked identity family).
Exit codes: 0 success, 1 input error, 2 search budget exceeded,
3 certified NOT_A_SOLUTION.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from typing import Sequence

from ._version import __version__
from .config import ToleranceConfig, default_search_budget
from .errors import BudgetExceeded, CliUsageError, SparkCertError
from .formats import (
    format_float,
    parse_matrix_auto,
    parse_vector,
    write_csv,
    write_matrix_market,
)
from .generators import random_matrix, spiked_identity
from .kernels import resolve_backend, warm_up
from .report import INFINITY_TOKEN, build_report, render_text, report_to_json
from .spark import (
    analyze_spark,
    coherence_index_lower_bound,
    exact_spark,
    mutual_coherence_lower_bound,
)
from .uniqueness import Verdict, certify

SPIKED_FAMILY = "example31"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: ANN201 - argparse signature
        raise CliUsageError(message)


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_common_search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--budget",
        type=_positive_int,
        default=None,
        help="max subsets examined by exhaustive searches "
        "(default: SPARK_CERT_BUDGET env var or 2000000)",
    )
    parser.add_argument(
        "--workers",
        type=_positive_int,
        default=1,
        help="threads for the subset scan (default 1)",
    )
    parser.add_argument(
        "--backend",
        choices=("auto", "numba", "numpy"),
        default=None,
        help="scan backend (default: SPARK_CERT_BACKEND env var, else numba when available)",
    )


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="emit the JSON report")
    group.add_argument(
        "--text", action="store_true", help="emit the text report (default)"
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="sparkcert", description=__doc__)
    parser.add_argument("--version", action="version", version=f"sparkcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", help="coherence bounds and optional exact spark for a matrix file"
    )
    p_analyze.add_argument("file", help="matrix file path, or - for stdin")
    p_analyze.add_argument(
        "--format", choices=("csv", "mm"), default=None, help="input format (default: sniff)"
    )
    p_analyze.add_argument(
        "--exact", action="store_true", help="also run the exhaustive spark search"
    )
    _add_common_search_flags(p_analyze)
    _add_output_flags(p_analyze)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_certify = sub.add_parser(
        "certify", help="uniqueness certificate for a candidate solution of A x = b"
    )
    p_certify.add_argument("matrixfile", help="matrix file path, or - for stdin")
    p_certify.add_argument("--x", required=True, help="candidate solution vector file")
    p_certify.add_argument("--b", required=True, help="right-hand-side vector file")
    p_certify.add_argument(
        "--format", choices=("csv", "mm"), default=None, help="matrix format (default: sniff)"
    )
    p_certify.add_argument(
        "--exact",
        action="store_true",
        help="compute the exact spark first to unlock the strongest criterion",
    )
    _add_common_search_flags(p_certify)
    _add_output_flags(p_certify)
    p_certify.set_defaults(func=_cmd_certify)

    p_gen = sub.add_parser("gen", help="write a generated matrix")
    gen_sub = p_gen.add_subparsers(dest="family", required=True)

    p_spiked = gen_sub.add_parser(
        SPIKED_FAMILY, help="n x (n+1) identity-plus-spike benchmark matrix"
    )
    p_spiked.add_argument("--n", type=_positive_int, required=True, help="row count (>= 2)")
    p_spiked.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p_spiked.add_argument(
        "--format",
        dest="matrix_format",
        choices=("csv", "mm"),
        default="csv",
        help="output format (default csv)",
    )
    p_spiked.set_defaults(func=_cmd_gen_spiked)

    p_random = gen_sub.add_parser("random", help="seeded standard-normal matrix")
    p_random.add_argument("--n", type=_positive_int, required=True, help="row count")
    p_random.add_argument("--m", type=_positive_int, required=True, help="column count")
    p_random.add_argument("--seed", type=int, required=True, help="RNG seed (>= 0)")
    p_random.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p_random.add_argument(
        "--format",
        dest="matrix_format",
        choices=("csv", "mm"),
        default="csv",
        help="output format (default csv)",
    )
    p_random.set_defaults(func=_cmd_gen_random)

    p_bench = sub.add_parser(
        "bench", help="bounds-vs-exact table for the benchmark family"
    )
    bench_sub = p_bench.add_subparsers(dest="family", required=True)
    p_bench_spiked = bench_sub.add_parser(
        SPIKED_FAMILY, help="run the identity-plus-spike family"
    )
    p_bench_spiked.add_argument(
        "--n-list",
        default="2,5,10,17",
        help="comma-separated row counts (default 2,5,10,17)",
    )
    _add_common_search_flags(p_bench_spiked)
    p_bench_spiked.set_defaults(func=_cmd_bench_spiked)

    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_output(path: str | None, content: str) -> None:
    if path is None:
        sys.stdout.write(content)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(content)


def _emit_report(args: argparse.Namespace, report) -> None:
    if args.json:
        sys.stdout.write(report_to_json(report))
    else:
        sys.stdout.write(render_text(report))


def _cmd_analyze(args: argparse.Namespace) -> int:
    matrix = parse_matrix_auto(_read_input(args.file), args.format)
    tolerances = ToleranceConfig()
    spark_report = analyze_spark(
        matrix,
        tolerances,
        compute_exact=args.exact,
        budget=args.budget,
        workers=args.workers,
        backend=None if args.backend in (None, "auto") else args.backend,
    )
    source = "<stdin>" if args.file == "-" else args.file
    report = build_report(matrix, source, spark_report, tolerances)
    _emit_report(args, report)
    return 2 if spark_report.search_budget_hit else 0


def _cmd_certify(args: argparse.Namespace) -> int:
    matrix = parse_matrix_auto(_read_input(args.matrixfile), args.format)
    x = parse_vector(_read_input(args.x))
    b = parse_vector(_read_input(args.b))
    tolerances = ToleranceConfig()
    spark_report = analyze_spark(
        matrix,
        tolerances,
        compute_exact=args.exact,
        budget=args.budget,
        workers=args.workers,
        backend=None if args.backend in (None, "auto") else args.backend,
    )
    if spark_report.search_budget_hit:
        raise BudgetExceeded(spark_report.subsets_examined or 0)
    certificate = certify(matrix, x, b, tolerances, exact=spark_report.exact)
    source = "<stdin>" if args.matrixfile == "-" else args.matrixfile
    report = build_report(
        matrix, source, spark_report, tolerances, certificate=certificate
    )
    _emit_report(args, report)
    return 3 if certificate.verdict is Verdict.NOT_A_SOLUTION else 0


def _render_matrix(data, fmt: str) -> str:
    if fmt == "mm":
        return write_matrix_market(data)
    return write_csv(data)


def _cmd_gen_spiked(args: argparse.Namespace) -> int:
    matrix = spiked_identity(args.n)
    _write_output(args.output, _render_matrix(matrix.data, args.matrix_format))
    return 0


def _cmd_gen_random(args: argparse.Namespace) -> int:
    matrix = random_matrix(args.n, args.m, args.seed)
    _write_output(args.output, _render_matrix(matrix.data, args.matrix_format))
    return 0


def _parse_n_list(raw: str) -> list[int]:
    values = []
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            n = int(token)
        except ValueError:
            raise CliUsageError(f"--n-list: {token!r} is not an integer") from None
        if n < 2:
            raise CliUsageError(f"--n-list: entries must be >= 2, got {n}")
        values.append(n)
    if not values:
        raise CliUsageError("--n-list: no entries")
    return values


def _cmd_bench_spiked(args: argparse.Namespace) -> int:
    ns = _parse_n_list(args.n_list)
    backend = resolve_backend(None if args.backend in (None, "auto") else args.backend)
    warm_up(backend)
    tolerances = ToleranceConfig()
    budget = args.budget if args.budget is not None else default_search_budget()
    print(f"# backend: {backend}")
    header = (
        f"{'n':>4} {'rows':>5} {'cols':>5} {'exact_spark':>12} "
        f"{'index_bound':>12} {'coherence_bound':>16} {'subsets':>10} {'seconds':>8}"
    )
    print(header)
    for n in ns:
        matrix = spiked_identity(n)
        start = time.perf_counter()
        result = exact_spark(matrix, tolerances, budget, args.workers, backend)
        elapsed = time.perf_counter() - start
        exact_shown = (
            str(result.spark.value) if result.spark.is_finite else INFINITY_TOKEN
        )
        index_bound = coherence_index_lower_bound(matrix, tolerances)
        index_shown = (
            INFINITY_TOKEN
            if isinstance(index_bound, float) and math.isinf(index_bound)
            else str(index_bound)
        )
        coherence_bound = mutual_coherence_lower_bound(matrix)
        coherence_shown = (
            "n/a" if coherence_bound is None else format_float(coherence_bound)
        )
        print(
            f"{n:>4} {matrix.rows:>5} {matrix.cols:>5} {exact_shown:>12} "
            f"{index_shown:>12} {coherence_shown:>16} {result.subsets_examined:>10} "
            f"{elapsed:>8.3f}"
        )
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SparkCertError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
