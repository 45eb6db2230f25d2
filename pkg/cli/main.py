"""Command-line front end.

    python -m cli.main super2 --input pair.forest
    python -m cli.main gen tightness --a 100 --b 2 --c 1 --out data
    python -m cli.main bench ratio --a-values 25 50 100
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from cli.bench import random_sweep, rows_to_csv, tightness_sweep
from cli.config import (
    bench_defaults,
    cli_defaults,
    load_solver_config,
    read_config,
    setup_logging,
)
from cli.generate import generate, records_for, render
from cli.runner import (
    BUDGET_ERRORS,
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VERIFY,
    exit_status,
    run_batch,
)
from cli.util.io import SIDECAR_SUFFIX, load_instances, write_text
from forest.errors import ForestError, VerificationFailed
from forest.graph import serialize_forest, to_dot
from schema import GEN_FAMILIES, Report, RunConfig

logger = logging.getLogger(__name__)

SOLVER_COMMANDS = (
    "mcs2",
    "super2",
    "greedy",
    "exact3",
    "ptas",
    "oracle-sub",
    "oracle-super",
)


def _triple(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated integers, got {text!r}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", nargs="+", default=[], dest="inputs", metavar="PATH")
    common.add_argument("--epsilon", type=float)
    common.add_argument("--delta", type=int)
    common.add_argument("--budget-nodes", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int)
    common.add_argument("--format", choices=("json", "dot", "edges"))
    common.add_argument("--out", metavar="DIR")
    common.add_argument("--config", metavar="INI")
    common.add_argument("--timings", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="forest-tool",
        description="Common induced subforests and superforests of small forests.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SOLVER_COMMANDS:
        sub.add_parser(name, parents=[common])

    gen = sub.add_parser("gen", parents=[common])
    gen.add_argument("family", choices=GEN_FAMILIES)
    gen.add_argument("--a", type=int)
    gen.add_argument("--b", type=int)
    gen.add_argument("--c", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--counts", type=int, nargs="+")
    gen.add_argument("--m", type=int)
    gen.add_argument("--values", type=int, nargs="+")
    gen.add_argument("--certificate", type=_triple, nargs="+")
    gen.add_argument("--q", type=int)
    gen.add_argument("--triples", type=_triple, nargs="+")
    gen.add_argument("--matching", type=int, nargs="+")
    gen.add_argument("--order", type=int)
    gen.add_argument("--count", type=int)
    gen.add_argument("--max-degree", type=int)

    bench = sub.add_parser("bench", parents=[common])
    bench.add_argument("sweep", choices=("ratio",))
    bench.add_argument("--a-values", type=int, nargs="+")
    bench.add_argument("--b", type=int)
    bench.add_argument("--c", type=int)
    bench.add_argument("--random", type=int, default=0, metavar="COUNT")
    return parser


_PARAM_KEYS = (
    "a", "b", "c", "k", "counts", "m", "values", "certificate",
    "q", "triples", "matching", "order", "count", "max_degree",
)


def _params(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        key: getattr(args, key)
        for key in _PARAM_KEYS
        if getattr(args, key, None) is not None
    }


def _run_solvers(run: RunConfig, args: argparse.Namespace) -> int:
    parser = read_config(args.config)
    config = load_solver_config(parser, run.budget_nodes)
    instances = load_instances(run.inputs)
    results = run_batch(instances, run, config)
    records = [record for record, _ in results]

    if run.format == "json":
        report = Report(seed=run.seed, config=run, records=records)
        text = write_text(run.out, "report.json", report.json(indent=2) + "\n")
    else:
        chunks = []
        for record, forest in results:
            if forest is None:
                continue
            if run.format == "dot":
                chunks.append(to_dot(forest, name="result"))
            else:
                comment = f"{run.subcommand} {record.instance}"
                chunks.append(serialize_forest(forest, comment=comment))
        text = write_text(run.out, f"{run.subcommand}.{run.format}", "".join(chunks))
    if text is not None:
        sys.stdout.write(text)
    return exit_status(records)


def _run_gen(run: RunConfig) -> int:
    generated = generate(run)
    suffix = ".dot" if run.format == "dot" else ".forest"
    chunks = []
    for stem, forests, sidecar in generated:
        body = render(stem, forests, run.format)
        text = write_text(run.out, stem + suffix, body)
        if run.out is not None:
            write_text(run.out, stem + SIDECAR_SUFFIX, sidecar.json(indent=2) + "\n")
        if text is not None:
            chunks.append(text)
    if chunks:
        sys.stdout.write("".join(chunks))
    for record in records_for(generated):
        logger.info("generated %s: orders %s", record.instance, record.details["orders"])
    return EXIT_OK


def _run_bench(run: RunConfig, args: argparse.Namespace) -> int:
    parser = read_config(args.config)
    a_values, b, c = bench_defaults(parser)
    rows = tightness_sweep(args.a_values or a_values, args.b or b, args.c or c)
    if args.random:
        config = load_solver_config(parser, run.budget_nodes)
        rows += random_sweep(run.seed, args.random, budget=config.oracle)
    text = write_text(run.out, "ratio.csv", rows_to_csv(rows))
    if text is not None:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    parser = read_config(args.config)
    setup_logging(parser, args.verbose)
    jobs, fmt, out = cli_defaults(parser)
    try:
        run = RunConfig(
            subcommand=args.subcommand,
            inputs=args.inputs,
            epsilon=args.epsilon,
            delta=args.delta,
            budget_nodes=args.budget_nodes,
            seed=args.seed,
            format=args.format or fmt,
            jobs=args.jobs or jobs,
            out=args.out or out,
            timings=args.timings,
            family=getattr(args, "family", None),
            params=_params(args),
        )
        if run.subcommand == "gen":
            return _run_gen(run)
        if run.subcommand == "bench":
            return _run_bench(run, args)
        return _run_solvers(run, args)
    except VerificationFailed as e:
        logger.error("verification failed: %s", e)
        return EXIT_VERIFY
    except BUDGET_ERRORS as e:
        logger.error("budget exhausted: %s", e)
        return EXIT_BUDGET
    except (ForestError, ValidationError, OSError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
