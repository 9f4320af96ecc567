"""
Bounded exhaustive equivalence checking.

A candidate decomposition is compared with the sequential program on every
array over the value domain whose length is within the bounds, split every
possible way into ``m`` segments. Arrays are visited by total length, then in
domain order, then by split, so the first failure found is also a shortest one.
"""

import logging
import time
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from ..models.bounds import VerifBounds
from ..models.decomposition import Decomposition, MergeOp, PrefixKind, PrefixSpec
from ..models.errors import ConfigError, EvalError, SynthesisTimeout
from ..models.dsl import Program
from ..models.results import PrefixLengthStats, Verdict, VerdictKind
from ..models.scalar import Scalar, add, mul, smax, smin
from .evaluator import eval_predicate
from .interpreter import InputArray, OutputCache, append

logger = logging.getLogger(__name__)

Segmentation = Tuple[InputArray, ...]

# how often the enumeration looks at the clock
_DEADLINE_STRIDE = 2048


def _cond_scan(pred, array: Sequence[Scalar]) -> Tuple[InputArray, bool]:
    for k, elem in enumerate(array):
        if eval_predicate(pred, elem):
            return tuple(array[: k + 1]), True
    return tuple(array), False


def compute_prefix(spec: PrefixSpec, array: Sequence[Scalar]) -> InputArray:
    if spec.kind == PrefixKind.NONE:
        return ()
    if spec.kind == PrefixKind.CONST:
        return tuple(array[: spec.length])
    return _cond_scan(spec.predicate, array)[0]


def prefix_extent(spec: PrefixSpec, segments: Sequence[Sequence[Scalar]], i: int) -> InputArray:
    """Elements that worker ``i`` folds after its own segment.

    Constant prefixes come from the next segment only. A conditional prefix
    that does not find its element in the next segment keeps scanning the
    segments after it.
    """
    if spec.kind == PrefixKind.NONE or i + 1 >= len(segments):
        return ()
    if spec.kind == PrefixKind.CONST:
        return compute_prefix(spec, segments[i + 1])
    extent: List[Scalar] = []
    for seg in segments[i + 1:]:
        part, found = _cond_scan(spec.predicate, seg)
        extent.extend(part)
        if found:
            break
    return tuple(extent)


def apply_merge(op: MergeOp, values: Sequence[Scalar]) -> Scalar:
    if not values:
        raise ValueError("merge needs at least one partial output")
    if op == MergeOp.FIRST:
        return values[0]
    if op == MergeOp.LAST:
        return values[-1]
    binary = {MergeOp.ADD: add, MergeOp.MUL: mul, MergeOp.MIN: smin, MergeOp.MAX: smax}[op]
    acc = values[0]
    for v in values[1:]:
        acc = binary(acc, v)
    return acc


def partial_outputs(
    p: Program,
    d: Decomposition,
    segments: Sequence[Sequence[Scalar]],
    cache: Optional[OutputCache] = None,
) -> List[Scalar]:
    if cache is None:
        cache = OutputCache(p)
    return [
        cache.get(tuple(seg) + prefix_extent(d.prefix, segments, i))
        for i, seg in enumerate(segments)
    ]


def parallel_outputs(
    p: Program,
    d: Decomposition,
    segments: Sequence[Sequence[Scalar]],
    cache: Optional[OutputCache] = None,
) -> Scalar:
    if len(segments) < 2:
        raise ValueError("parallel evaluation needs at least two segments")
    return apply_merge(d.merge, partial_outputs(p, d, segments, cache))


def _splits(n: int, m: int, min_seg_len: int) -> Iterator[Tuple[int, ...]]:
    """Segment lengths summing to n, each at least min_seg_len, in lexicographic order."""
    free = n - m * min_seg_len
    if free < 0:
        return
    for bars in combinations(range(free + m - 1), m - 1):
        lengths, prev = [], -1
        for bar in bars:
            lengths.append(bar - prev - 1 + min_seg_len)
            prev = bar
        lengths.append(free + m - 2 - prev + min_seg_len)
        yield tuple(lengths)


def enumerate_segmentations(b: VerifBounds) -> Iterator[Segmentation]:
    if not b.feasible:
        return
    tail = (b.terminator,) if b.terminator is not None else ()
    for n in range(b.m * b.min_seg_len, b.data_len_max + 1):
        splits = list(_splits(n, b.m, b.min_seg_len))
        for array in product(b.domain, repeat=n):
            for lengths in splits:
                segments, start = [], 0
                for length in lengths:
                    segments.append(tuple(array[start:start + length]))
                    start += length
                segments[-1] = segments[-1] + tail
                yield tuple(segments)


def count_search_space(b: VerifBounds) -> int:
    if not b.feasible:
        return 0
    total = 0
    for n in range(b.m * b.min_seg_len, b.data_len_max + 1):
        free = n - b.m * b.min_seg_len
        total += len(b.domain) ** n * comb(free + b.m - 1, b.m - 1)
    return total


def candidate_bounds(d: Decomposition, b: VerifBounds) -> VerifBounds:
    """Bounds under which ``d`` is checked: a constant prefix of c needs every segment longer than c."""
    if d.prefix.kind == PrefixKind.CONST and d.prefix.length >= b.min_seg_len:
        return b.with_m(b.m, d.prefix.length + 1)
    return b


def verify(
    p: Program,
    d: Decomposition,
    b: VerifBounds,
    cache: Optional[OutputCache] = None,
    deadline: Optional[float] = None,
) -> Verdict:
    b = candidate_bounds(d, b)
    if not b.feasible:
        raise ConfigError(
            f"{d.describe()} needs segments of at least {b.min_seg_len}; "
            f"{b.m} of them do not fit in {b.data_len_max} elements"
        )
    if cache is None:
        cache = OutputCache(p)
    checked = 0
    for segments in enumerate_segmentations(b):
        if deadline is not None and checked % _DEADLINE_STRIDE == 0 and time.monotonic() > deadline:
            raise SynthesisTimeout(deadline)
        checked += 1
        try:
            expected = cache.get(append(segments))
            actual = parallel_outputs(p, d, segments, cache)
        except EvalError as exc:
            logger.debug(f"Evaluation failed for {d.describe()} on {segments}: {exc}")
            return Verdict(
                kind=VerdictKind.ERROR,
                segments=[list(s) for s in segments],
                description=str(exc),
                checked=checked,
            )
        if expected != actual:
            return Verdict(
                kind=VerdictKind.COUNTEREXAMPLE,
                segments=[list(s) for s in segments],
                expected=expected,
                actual=actual,
                checked=checked,
            )
    return Verdict(kind=VerdictKind.VALID, checked=checked)


def prefix_length_stats(d: Decomposition, bounds: Iterable[VerifBounds]) -> Optional[PrefixLengthStats]:
    """Per segmentation, the longest prefix any worker borrows; summarized over all checked bounds."""
    longest: List[int] = []
    for b in bounds:
        for segments in enumerate_segmentations(candidate_bounds(d, b)):
            longest.append(max(len(prefix_extent(d.prefix, segments, i)) for i in range(len(segments) - 1)))
    if not longest:
        return None
    return PrefixLengthStats(
        segmentations=len(longest),
        min=min(longest),
        max=max(longest),
        mean=sum(longest) / len(longest),
    )
