"""Benchmark corpus: the seven reference folds and their expected decompositions."""

import logging
from pathlib import Path
from typing import Dict, List, Optional

from ..config import settings
from ..models.benchmark import BenchmarkEntry
from ..models.decomposition import Hypothesis, MergeOp
from ..models.dsl import Program
from ..models.errors import BenchmarkNotFound
from ..models.scalar import EOF, Scalar
from .parser import parse_program

logger = logging.getLogger(__name__)

# name -> (description, hypothesis, merge, prefix, reference "# Vars")
EXPECTED: Dict[str, tuple] = {
    "array-count": ("size of the array", Hypothesis.NO_PREFIX, MergeOp.ADD, "-", 1),
    "array-max": ("largest element", Hypothesis.NO_PREFIX, MergeOp.MAX, "-", 1),
    "is-sorted": ("1 if the array is sorted", Hypothesis.CONST_PREFIX, MergeOp.MIN, "1", 1),
    "alternation-of-1-2": ("1 if the array alternates 1 and 2", Hypothesis.CONST_PREFIX, MergeOp.MIN, "1", 1),
    "number-of-123": ("occurrences of the window 1 2 3", Hypothesis.CONST_PREFIX, MergeOp.ADD, "2", 2),
    "seen-2-after-1": ("1 if a 2 appears after a 1", Hypothesis.COND_PREFIX, MergeOp.MAX, "(= elem 2)", 2),
    "alternation-of-11-22": (
        "1 if the array alternates the pairs 1 1 and 2 2",
        Hypothesis.COND_PREFIX,
        MergeOp.MIN,
        "(= elem eof)",
        3,
    ),
}

# shipped programs outside the reference table; none of them decomposes
UNDECOMPOSABLE: Dict[str, str] = {
    "alternating-sum": "a0 - a1 + a2 - ...",
}

# inputs of these benchmarks carry a trailing eof
TERMINATED = {"alternation-of-11-22"}


def terminator_for(program: Program) -> Optional[Scalar]:
    return EOF if EOF in program.constants() else None


def list_benchmarks(table_only: bool = False) -> List[str]:
    if table_only:
        return list(EXPECTED)
    return list(EXPECTED) + list(UNDECOMPOSABLE)


def _read(name: str, bench_dir: Path) -> str:
    path = bench_dir / f"{name}.gsp"
    return path.read_text(encoding="utf-8")


def load_benchmark(name: str, bench_dir: Optional[Path] = None) -> BenchmarkEntry:
    if name not in EXPECTED and name not in UNDECOMPOSABLE:
        raise BenchmarkNotFound(name, list_benchmarks())
    bench_dir = Path(bench_dir or settings.BENCH_DIR)
    source = _read(name, bench_dir)
    program = parse_program(source, name=name)
    if name in UNDECOMPOSABLE:
        return BenchmarkEntry(name=name, description=UNDECOMPOSABLE[name], program=program, source=source)

    description, hypothesis, merge, prefix, table_vars = EXPECTED[name]
    if program.arity != table_vars:
        logger.debug(f"{name}: program arity {program.arity}, reference count {table_vars}")
    return BenchmarkEntry(
        name=name,
        description=description,
        program=program,
        source=source,
        expected_hypothesis=hypothesis,
        expected_merge=merge,
        expected_prefix=prefix,
        table_vars=table_vars,
        terminator=EOF if name in TERMINATED else None,
    )
