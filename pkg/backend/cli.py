#!/usr/bin/env python3
"""
grassp - synthesize, verify and run parallel decompositions of folds.

Examples:
    grassp synthesize --bench is-sorted
    grassp verify --bench is-sorted --merge min --prefix-const 1
    grassp run --bench array-max --input values.txt --segments 4
    grassp bench --format tsv
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.config import settings
from app.models.bounds import RunConfig, parse_domain
from app.models.decomposition import Decomposition, MergeOp, PrefixSpec
from app.models.errors import ConfigError, GrasspError, SynthesisTimeout
from app.services import pipeline
from app.services.parser import parse_bool_expr
from app.utils.input_reader import read_input_file
from app.utils.reporting import (
    bench_table,
    bench_tsv,
    console,
    cost_lines,
    cost_table,
    echo,
    synthesis_lines,
    verdict_lines,
)

logger = logging.getLogger("grassp")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2
EXIT_MISMATCH = 3


def _merge_list(text: str) -> List[MergeOp]:
    try:
        return [MergeOp.parse(token) for token in text.split(",") if token.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_config(args: argparse.Namespace) -> RunConfig:
    overrides = {}
    if args.segments:
        overrides["segments"] = args.segments
    if args.max_len is not None:
        overrides["max_len"] = args.max_len
    if args.min_seg_len is not None:
        overrides["min_seg_len"] = args.min_seg_len
    if args.domain is not None:
        overrides["domain"] = parse_domain(args.domain)
    if args.merge_menu:
        overrides["merge_menu"] = args.merge_menu
    if args.max_const_prefix is not None:
        overrides["max_const_prefix"] = args.max_const_prefix
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if args.timeout is not None:
        overrides["timeout"] = args.timeout
    try:
        return RunConfig(strict_menu=args.strict_menu, format=args.format, **overrides)
    except (ValidationError, ValueError) as e:
        raise ConfigError(str(e))


def resolve_target(args: argparse.Namespace) -> pipeline.Target:
    if args.bench:
        return pipeline.target_from_benchmark(args.bench)
    if args.program:
        return pipeline.target_from_file(args.program)
    raise ConfigError("either --bench NAME or --program FILE is required")


def build_decomposition(args: argparse.Namespace) -> Optional[Decomposition]:
    if args.merge is None:
        if args.prefix_const is not None or args.prefix_cond is not None:
            raise ConfigError("--prefix-const and --prefix-cond need --merge")
        return None
    if args.prefix_const is not None:
        prefix = PrefixSpec.const(args.prefix_const)
    elif args.prefix_cond is not None:
        prefix = PrefixSpec.cond(parse_bool_expr(args.prefix_cond))
    else:
        prefix = PrefixSpec.none()
    return Decomposition(merge=args.merge, prefix=prefix)


def cmd_synthesize(args: argparse.Namespace) -> int:
    config = build_config(args)
    target = resolve_target(args)
    result = pipeline.synthesize(target, config)
    for line in synthesis_lines(result):
        echo(line)
    return EXIT_OK if result.found else EXIT_UNKNOWN


def cmd_verify(args: argparse.Namespace) -> int:
    config = build_config(args)
    target = resolve_target(args)
    decomposition = build_decomposition(args)
    if decomposition is None:
        raise ConfigError("verify needs --merge")
    verdict = pipeline.verify_decomposition(target, decomposition, config)
    for line in verdict_lines(verdict):
        echo(line)
    return EXIT_OK if verdict.valid else EXIT_ERROR


def cmd_run(args: argparse.Namespace) -> int:
    config = build_config(args)
    target = resolve_target(args)
    if not args.input:
        raise ConfigError("run needs --input FILE")
    decomposition = build_decomposition(args)
    if decomposition is None:
        result = pipeline.synthesize(target, config)
        if not result.found:
            echo("unknown")
            return EXIT_UNKNOWN
        decomposition = result.decomposition
        echo(result.render())
    values = read_input_file(args.input, target.terminator)
    segments = max(config.segments)
    out, report = pipeline.run_decomposition(target, decomposition, values, segments, config.jobs)
    echo(f"output: {out}")
    out_console = console()
    out_console.print(cost_table(report))
    for line in cost_lines(report):
        echo(line, out_console)
    return EXIT_OK if report.cross_check else EXIT_MISMATCH


def cmd_bench(args: argparse.Namespace) -> int:
    config = build_config(args)
    rows = pipeline.bench(config, [args.bench] if args.bench else None)
    if config.format == "tsv":
        sys.stdout.write(bench_tsv(rows))
    else:
        out_console = console()
        out_console.print(bench_table(rows))
        passed = sum(1 for row in rows if row.passed)
        echo(f"{passed}/{len(rows)} rows match the expected decompositions", out_console)
    return EXIT_OK if all(row.passed for row in rows) else EXIT_ERROR


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--bench", help="Benchmark name")
    source.add_argument("--program", help="Path to a .gsp program")
    parser.add_argument(
        "--segments", type=int, action="append",
        help=f"Segment count m; repeatable (default: {','.join(map(str, settings.SEGMENTS))})",
    )
    parser.add_argument("--max-len", type=int, help=f"Longest enumerated array (default: {settings.MAX_LEN})")
    parser.add_argument("--min-seg-len", type=int, help=f"Shortest segment (default: {settings.MIN_SEG_LEN})")
    parser.add_argument("--domain", help=f"Comma separated element values (default: {settings.DOMAIN})")
    parser.add_argument("--merge-menu", type=_merge_list, help="Comma separated merge operators to try")
    parser.add_argument("--strict-menu", action="store_true", help="Only try +, min and max")
    parser.add_argument("--max-const-prefix", type=int, help="Longest constant prefix to try")
    parser.add_argument("--jobs", type=int, help=f"Worker threads (default: {settings.JOBS})")
    parser.add_argument("--timeout", type=float, help=f"Seconds per synthesis (default: {settings.TIMEOUT:g})")
    parser.add_argument("--format", choices=["text", "tsv"], default="text", help="Report format")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging on stderr")


def add_decomposition_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--merge", type=MergeOp.parse, help="Merge operator (+, min, max, *, first, last)")
    prefix = parser.add_mutually_exclusive_group()
    prefix.add_argument("--prefix-none", action="store_true", help="No prefix (default)")
    prefix.add_argument("--prefix-const", type=int, help="Constant prefix length")
    prefix.add_argument("--prefix-cond", help="Prefix condition, e.g. '(= elem 2)'")
    parser.add_argument("--input", help="Input array file (run only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassp",
        description="Synthesize parallel decompositions of sequential folds",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    synthesize_parser = subparsers.add_parser("synthesize", help="Search for a decomposition")
    add_common_arguments(synthesize_parser)

    verify_parser = subparsers.add_parser("verify", help="Check one decomposition")
    add_common_arguments(verify_parser)
    add_decomposition_arguments(verify_parser)

    run_parser = subparsers.add_parser("run", help="Execute a decomposition on worker threads")
    add_common_arguments(run_parser)
    add_decomposition_arguments(run_parser)

    bench_parser = subparsers.add_parser("bench", help="Synthesize every benchmark and compare")
    add_common_arguments(bench_parser)
    return parser


COMMANDS = {
    "synthesize": cmd_synthesize,
    "verify": cmd_verify,
    "run": cmd_run,
    "bench": cmd_bench,
}


def setup_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), None) or logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_ERROR

    setup_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 130
    except SynthesisTimeout as e:
        logger.warning(str(e))
        return EXIT_UNKNOWN
    except (GrasspError, OSError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
