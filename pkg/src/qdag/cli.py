"""Command-line interface.

    qdag validate FILE
    qdag eval FILE --assign x1=1,x2=0 [--mode stochastic --trials 2000]
    qdag compile-anf FILE [--out FILE.circ]
    qdag longest-path FILE [--source 1]
    qdag diameter FILE [--workers 4]
    qdag bench --sizes 16,64,256 [--problem dp --combiner OR] [--out bench.csv]

Exit codes: 0 success, 2 input or validation error, 3 internal error.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from qdag import __version__
from qdag.circuits import parse_assignment
from qdag.config import configure_logging
from qdag.dp_engine import Combiner
from qdag.errors import FormatError, InvalidParams, QdagError
from qdag.experiments import BENCH_PROBLEMS, bench, diameter_trials, evaluate_input, longest_path_trials
from qdag.formats import describe, format_circuit, load_path, write_text
from qdag.qprimitives import Mode, SearchBoosting, SimConfig
from qdag.reports import fit_constant, rows_to_csv
from qdag.zhegalkin import compile_to_circuit, normalize

logger = logging.getLogger("qdag.cli")


def _sizes(text: str) -> List[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def _add_run_flags(parser: argparse.ArgumentParser, boost_help: str) -> None:
    parser.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXACT.value)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=1)
    parser.add_argument("--boost", type=int, default=None, help=boost_help)
    parser.add_argument("--epsilon", type=float, default=None, help="base error of one primitive call (default 0.5)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdag", description="Quantum DP-on-DAG simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"], default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .dag, .circ or .anf file")
    p.add_argument("path")

    p = sub.add_parser("eval", help="evaluate a circuit or polynomial")
    p.add_argument("path")
    p.add_argument("--assign", action="append", default=[], help="name=bit pairs, comma separated; repeatable")
    p.add_argument("--search-boosting", choices=[b.value for b in SearchBoosting], default=None)
    _add_run_flags(p, "boost count k per vertex (default 2*ceil(log2 nhat))")

    p = sub.add_parser("compile-anf", help="compile a polynomial into a .circ circuit")
    p.add_argument("path")
    p.add_argument("--out", default=None, help="output .circ file (default: standard output)")

    p = sub.add_parser("longest-path", help="single-source longest paths on a weighted .dag")
    p.add_argument("path")
    p.add_argument("--source", type=int, default=1)
    _add_run_flags(p, "boost count k per vertex (default 2*ceil(log2 n))")

    p = sub.add_parser("diameter", help="diameter of an unweighted .dag")
    p.add_argument("path")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--final-boost", type=int, default=None, help="boost of the final maximum (default ceil(log2 n))")
    _add_run_flags(p, "boost count k per vertex (default 2*ceil(log2 n))")

    p = sub.add_parser("bench", help="query-count sweep over generated layered DAGs")
    p.add_argument("--problem", choices=BENCH_PROBLEMS, default="dp")
    p.add_argument("--family", choices=["layered"], default="layered")
    p.add_argument("--sizes", type=_sizes, default=[16, 64, 256])
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--combiner", type=str.upper, choices=[c.value for c in Combiner], default=Combiner.OR.value)
    p.add_argument("--instances", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV file (default: standard output)")
    _add_run_flags(p, "override the default boost count")
    return parser


def _config(args: argparse.Namespace, **extra) -> SimConfig:
    return SimConfig.build(mode=args.mode, epsilon_base=args.epsilon, **extra)


def _print_lines(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def cmd_validate(args: argparse.Namespace) -> int:
    info = describe(load_path(args.path))
    print(info["message"])
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    loaded = load_path(args.path)
    assignment = parse_assignment(args.assign)
    config = _config(args, search_boost=args.boost, search_boosting=args.search_boosting)
    report = evaluate_input(loaded, assignment, config, args.seed, args.trials)
    _print_lines(report.to_lines())
    return 0


def cmd_compile_anf(args: argparse.Namespace) -> int:
    loaded = load_path(args.path)
    if loaded.kind != "anf":
        raise FormatError(f"compile-anf needs a .anf input, got {loaded.kind}")
    circuit = compile_to_circuit(normalize(loaded.value), allow_literal=True)
    text = format_circuit(circuit)
    if args.out:
        write_text(args.out, text)
        print(f"wrote {args.out} n={circuit.dag.n} m={circuit.dag.m} nhat={circuit.dag.n_hat}")
    else:
        sys.stdout.write(text)
    return 0


def _load_dag(path: str):
    loaded = load_path(path)
    if loaded.kind != "dag":
        raise FormatError(f"expected a .dag input, got {loaded.kind}")
    return loaded.value


def cmd_longest_path(args: argparse.Namespace) -> int:
    dag = _load_dag(args.path)
    config = _config(args, extremum_boost=args.boost)
    report, table = longest_path_trials(dag, args.source, config, args.seed, args.trials)
    _print_lines(report.to_lines())
    print("t: " + " ".join(table.formatted()))
    return 0


def cmd_diameter(args: argparse.Namespace) -> int:
    dag = _load_dag(args.path)
    if dag.is_weighted:
        raise InvalidParams("diameter needs an unweighted graph ('dag-unweighted' header)")
    config = _config(args, extremum_boost=args.boost, final_boost=args.final_boost, workers=args.workers)
    report = diameter_trials(dag, config, args.seed, args.trials)
    _print_lines(report.to_lines())
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    boost_field = "search_boost" if args.problem == "dp" and Combiner(args.combiner).is_boolean else "extremum_boost"
    config = _config(args, **{boost_field: args.boost})
    rows = bench(
        args.problem,
        args.sizes,
        config,
        combiner=Combiner(args.combiner),
        density=args.density,
        trials=args.trials,
        seed=args.seed,
        instances=args.instances,
    )
    text = rows_to_csv(rows)
    overall, per_size = fit_constant(rows)
    summary = [f"fitted C={overall:.6f}"] + [f"  n={n}: C={c:.6f}" for n, c in per_size.items()]
    if args.out:
        write_text(args.out, text)
        _print_lines(summary)
    else:
        sys.stdout.write(text)
        for line in summary:
            print(line, file=sys.stderr)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "compile-anf": cmd_compile_anf,
    "longest-path": cmd_longest_path,
    "diameter": cmd_diameter,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except QdagError as e:
        logger.warning("%s failed: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:  # pylint: disable=broad-except
        logger.exception("unexpected failure in %s", args.command)
        print(f"error: internal failure: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
