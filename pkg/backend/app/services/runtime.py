"""
Thread-pool execution of a decomposition and the iteration cost model.

A run has three phases separated by barriers:

1. every worker computes the prefix it borrows from the following segment(s);
2. every worker folds its own segment plus that prefix, starting from the
   initial state;
3. the partial outputs are merged on the calling thread.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor, wait
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from ..models.decomposition import Decomposition, PrefixKind
from ..models.dsl import Program
from ..models.errors import ConfigError, EvalError, WorkerError
from ..models.results import CostReport, PhaseEvent
from ..models.scalar import Scalar
from .interpreter import InputArray, fold_run, output, sequential_run
from .verifier import apply_merge, prefix_extent

logger = logging.getLogger(__name__)


def partition(array: Sequence[Scalar], m: int) -> List[InputArray]:
    """Split into m contiguous near-equal segments, longer ones first."""
    if m < 1:
        raise ConfigError("segment count must be positive")
    if len(array) < m:
        raise ConfigError(f"cannot split {len(array)} elements into {m} non-empty segments")
    size, extra = divmod(len(array), m)
    segments, start = [], 0
    for i in range(m):
        end = start + size + (1 if i < extra else 0)
        segments.append(tuple(array[start:end]))
        start = end
    return segments


def speedup_model(s: Sequence[int], p: Sequence[int], m: Optional[int] = None) -> CostReport:
    m = len(s) if m is None else m
    if len(s) != m or len(p) != m:
        raise ConfigError(f"cost vectors must have length {m} (got s={len(s)}, p={len(p)})")
    if m < 1:
        raise ConfigError("cost model needs at least one segment")
    if p[0] != 0:
        raise ConfigError("the first segment lends no prefix (p_1 must be 0)")
    t_s = sum(s)
    t_p = max(p[1:], default=0)
    t_f = max(s[i] + (p[i + 1] if i + 1 < m else 0) for i in range(m))
    t_c = m
    return CostReport(
        s=list(s),
        p=list(p),
        T_s=t_s,
        T_p=t_p,
        T_f=t_f,
        T_c=t_c,
        X=Fraction(t_s, t_p + t_f + t_c),
    )


def _timed_phase(
    pool: ThreadPoolExecutor,
    phase: int,
    origin: float,
    tasks: List[Callable[[], object]],
) -> Tuple[list, List[PhaseEvent]]:
    def run(index: int, task: Callable[[], object]):
        started = time.perf_counter() - origin
        try:
            value = task()
        except EvalError as exc:
            raise WorkerError(index, exc) from exc
        return value, PhaseEvent(phase=phase, segment=index, started=started, finished=time.perf_counter() - origin)

    futures = [pool.submit(run, i, task) for i, task in enumerate(tasks)]
    # barrier: nothing from the next phase is submitted until all of these finish
    wait(futures)
    results, events = [], []
    for future in futures:
        value, event = future.result()
        results.append(value)
        events.append(event)
    return results, events


def run_parallel(
    p: Program,
    d: Decomposition,
    segments: Sequence[Sequence[Scalar]],
    workers: int,
    measure_sequential: bool = False,
) -> Tuple[Scalar, CostReport]:
    if not segments:
        raise ConfigError("at least one segment is required")
    if workers < 1:
        raise ConfigError("worker count must be positive")
    segments = [tuple(seg) for seg in segments]
    m = len(segments)
    if m > 1 and d.prefix.kind == PrefixKind.CONST:
        short = [i for i, seg in enumerate(segments) if len(seg) <= d.prefix.length]
        if short:
            raise ConfigError(
                f"{d.describe()} needs every segment longer than {d.prefix.length}; "
                f"segment {short[0]} has {len(segments[short[0]])} elements"
            )
    logger.info(f"🚀 Running {p.name} on {m} segments with {workers} workers ({d.describe()})")

    origin = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        extents, prefix_events = _timed_phase(
            pool, 1, origin, [lambda i=i: prefix_extent(d.prefix, segments, i) for i in range(m)]
        )
        traces, fold_events = _timed_phase(
            pool, 2, origin, [lambda i=i: fold_run(p, p.init, segments[i] + extents[i]) for i in range(m)]
        )
    partials = []
    for i, trace in enumerate(traces):
        try:
            partials.append(output(p, trace.final_state))
        except EvalError as exc:
            raise WorkerError(i, exc) from exc
    out = partials[0] if m == 1 else apply_merge(d.merge, partials)
    wall_parallel = time.perf_counter() - origin

    s = [len(seg) for seg in segments]
    borrowed = [0] + [len(extent) for extent in extents[:-1]]
    report = speedup_model(s, borrowed, m)
    report.wall_parallel = wall_parallel
    report.schedule = prefix_events + fold_events
    report.prefix_lengths = borrowed[1:]

    if measure_sequential:
        started = time.perf_counter()
        expected, _ = sequential_run(p, [x for seg in segments for x in seg])
        report.wall_sequential = time.perf_counter() - started
        report.cross_check = expected == out
        if not report.cross_check:
            logger.warning(f"Parallel output {out} differs from sequential output {expected}")
    logger.info(f"Parallel run finished: output {out}, X={report.X}")
    return out, report
