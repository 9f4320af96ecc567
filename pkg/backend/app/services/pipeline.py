"""
Workflows shared by the command line and the HTTP service: resolve a program,
then synthesize, verify, run or benchmark it under a RunConfig.
"""

import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from ..models.benchmark import BenchmarkEntry
from ..models.bounds import RunConfig
from ..models.decomposition import Decomposition
from ..models.dsl import Program
from ..models.errors import ConfigError, SynthesisTimeout
from ..models.results import BenchRow, CostReport, SynthesisResult, Verdict, VerdictKind
from ..models.scalar import Scalar
from .benchmarks import list_benchmarks, load_benchmark, terminator_for
from .parser import parse_program
from .runtime import partition, run_parallel
from .synthesizer import grassp
from .verifier import candidate_bounds, verify

logger = logging.getLogger(__name__)


@dataclass
class Target:
    program: Program
    terminator: Optional[Scalar] = None
    entry: Optional[BenchmarkEntry] = None


def target_from_benchmark(name: str) -> Target:
    entry = load_benchmark(name)
    return Target(program=entry.program, terminator=entry.terminator, entry=entry)


def target_from_source(source: str, name: Optional[str] = None) -> Target:
    program = parse_program(source, name=name)
    return Target(program=program, terminator=terminator_for(program))


def target_from_file(path: Path) -> Target:
    path = Path(path)
    return target_from_source(path.read_text(encoding="utf-8"), name=path.stem)


def synthesize(target: Target, config: RunConfig) -> SynthesisResult:
    return grassp(
        target.program,
        config.bounds(target.terminator),
        config.space(),
        segment_counts=config.synthesis_segments(),
        jobs=config.jobs,
        timeout=config.timeout,
    )


def verify_decomposition(target: Target, decomposition: Decomposition, config: RunConfig) -> Verdict:
    """Check every configured segment count; the first failure is returned."""
    base = config.bounds(target.terminator)
    checked = 0
    feasible = False
    for m in config.synthesis_segments():
        bounds = candidate_bounds(decomposition, base.with_m(m))
        if not bounds.feasible:
            logger.info(f"Skipping m={m}: no array within the bounds can be split that way for {decomposition.describe()}")
            continue
        feasible = True
        verdict = verify(target.program, decomposition, bounds)
        checked += verdict.checked
        if verdict.kind != VerdictKind.VALID:
            verdict.checked = checked
            return verdict
    if not feasible:
        raise ConfigError("no configured segment count fits the length bounds")
    return Verdict(kind=VerdictKind.VALID, checked=checked)


def run_decomposition(
    target: Target,
    decomposition: Decomposition,
    values: Sequence[Scalar],
    segments: int,
    workers: int,
) -> Tuple[Scalar, CostReport]:
    parts = partition(values, segments)
    return run_parallel(target.program, decomposition, parts, workers, measure_sequential=True)


def expected_row(entry: BenchmarkEntry) -> str:
    if entry.expected_hypothesis is None:
        return "unknown"
    return f"{entry.expected_hypothesis.value} {entry.expected_merge.value} {entry.expected_prefix}"


def bench(config: RunConfig, names: Optional[List[str]] = None) -> List[BenchRow]:
    rows = []
    for name in names or list_benchmarks(table_only=True):
        target = target_from_benchmark(name)
        entry = target.entry
        if entry.table_vars is not None and entry.arity != entry.table_vars:
            logger.warning(f"{name}: program uses {entry.arity} state variables, reference count is {entry.table_vars}")
        started = time.monotonic()
        try:
            result = synthesize(target, config)
        except SynthesisTimeout:
            logger.warning(f"{name}: synthesis timed out after {config.timeout:g}s")
            rows.append(
                BenchRow(
                    benchmark=name, vars=entry.arity, table_vars=entry.table_vars, hypothesis="-",
                    merge="-", prefix="-", time_s=time.monotonic() - started, status="TIMEOUT",
                    expected=expected_row(entry),
                )
            )
            continue
        if result.found:
            hypothesis = result.hypothesis.value
            merge = result.decomposition.merge.value
            prefix = result.decomposition.prefix.render()
        else:
            hypothesis, merge, prefix = "unknown", "-", "-"
        if entry.expected_hypothesis is None:
            passed = not result.found
        else:
            passed = (
                result.found
                and result.hypothesis == entry.expected_hypothesis
                and result.decomposition.merge == entry.expected_merge
                and prefix == entry.expected_prefix
            )
        row = BenchRow(
            benchmark=name,
            vars=entry.arity,
            table_vars=entry.table_vars,
            hypothesis=hypothesis,
            merge=merge,
            prefix=prefix,
            time_s=result.stats.elapsed,
            status="PASS" if passed else "FAIL",
            expected=expected_row(entry),
        )
        logger.info(f"{name}: {hypothesis} {merge} {prefix} [{row.status}]")
        rows.append(row)
    return rows
