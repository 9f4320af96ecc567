import random

import pytest

from app.models.bounds import VerifBounds
from app.models.decomposition import Decomposition, MergeOp, PrefixSpec
from app.models.errors import ConfigError
from app.models.results import VerdictKind
from app.models.scalar import EOF
from app.services.interpreter import append, sequential_run
from app.services.parser import parse_bool_expr, parse_program
from app.services.verifier import (
    apply_merge,
    candidate_bounds,
    compute_prefix,
    count_search_space,
    enumerate_segmentations,
    parallel_outputs,
    prefix_extent,
    verify,
)

ELEM_IS_2 = parse_bool_expr("(= elem 2)")


def test_compute_prefix():
    assert compute_prefix(PrefixSpec.none(), (7, 8)) == ()
    assert compute_prefix(PrefixSpec.const(1), (7, 8, 9)) == (7,)
    assert compute_prefix(PrefixSpec.const(5), (7, 8)) == (7, 8)
    assert compute_prefix(PrefixSpec.cond(ELEM_IS_2), (1, 1, 2, 5)) == (1, 1, 2)
    assert compute_prefix(PrefixSpec.cond(ELEM_IS_2), (1, 1)) == (1, 1)


def test_conditional_prefix_continues_into_later_segments():
    spec = PrefixSpec.cond(ELEM_IS_2)
    segments = [(1,), (0,), (0, 2, 3)]
    assert prefix_extent(spec, segments, 0) == (0, 0, 2)
    assert prefix_extent(spec, segments, 1) == (0, 2)
    assert prefix_extent(spec, segments, 2) == ()


def test_constant_prefix_is_truncated_to_next_segment():
    assert prefix_extent(PrefixSpec.const(2), [(1,), (4,), (5, 6)], 0) == (4,)


def test_apply_merge():
    assert apply_merge(MergeOp.ADD, [1, 2, 3]) == 6
    assert apply_merge(MergeOp.MIN, [3, 1, 2]) == 1
    assert apply_merge(MergeOp.FIRST, [3, 1, 2]) == 3
    assert apply_merge(MergeOp.LAST, [3, 1, 2]) == 2
    assert apply_merge(MergeOp.MUL, [2, 3]) == 6


def test_parallel_outputs_examples(programs):
    assert parallel_outputs(programs["array-max"], Decomposition(merge=MergeOp.MAX), [(3,), (1, 2)]) == 3
    sorted_min = Decomposition(merge=MergeOp.MIN, prefix=PrefixSpec.const(1))
    assert parallel_outputs(programs["is-sorted"], sorted_min, [(1, 0), (5,)]) == 0
    seen = Decomposition(merge=MergeOp.MAX, prefix=PrefixSpec.cond(ELEM_IS_2))
    assert parallel_outputs(programs["seen-2-after-1"], seen, [(1,), (0, 2, 0)]) == 1


def test_last_segment_never_borrows(programs):
    d = Decomposition(merge=MergeOp.LAST, prefix=PrefixSpec.const(1))
    # the last worker only sees its own segment
    assert parallel_outputs(programs["array-count"], d, [(1, 1), (1, 1, 1)]) == 3


def test_count_search_space():
    assert count_search_space(VerifBounds(m=2, max_total_len=2, domain=(0, 1))) == 4
    assert count_search_space(VerifBounds(m=2, max_total_len=3, domain=(0,))) == 3
    assert count_search_space(VerifBounds(m=3, max_total_len=2, domain=(0,))) == 0


def test_count_matches_enumeration():
    for b in [
        VerifBounds(m=2, max_total_len=5, domain=(0, 1, 2)),
        VerifBounds(m=3, max_total_len=6, min_seg_len=2, domain=(0, 1)),
        VerifBounds(m=2, max_total_len=5, domain=(1, 2), terminator=EOF),
    ]:
        assert sum(1 for _ in enumerate_segmentations(b)) == count_search_space(b)


def test_segmentations_respect_bounds():
    b = VerifBounds(m=3, max_total_len=6, min_seg_len=1, domain=(0, 1), terminator=EOF)
    for segments in enumerate_segmentations(b):
        assert len(segments) == 3
        assert sum(len(s) for s in segments) <= 6
        assert segments[-1][-1] is EOF
        assert all(len(s) >= 1 for s in segments[:-1])
        assert EOF not in append(segments)[:-1]


def test_verify_is_sorted(programs, bounds):
    p = programs["is-sorted"]
    valid = verify(p, Decomposition(merge=MergeOp.MIN, prefix=PrefixSpec.const(1)), bounds)
    assert valid.kind == VerdictKind.VALID
    # a one-element prefix is only checked on segments of two or more
    assert valid.checked == count_search_space(bounds.with_m(2, 2))

    bad = verify(p, Decomposition(merge=MergeOp.MIN), bounds)
    assert bad.kind == VerdictKind.COUNTEREXAMPLE
    assert bad.segments == [[1], [0]]
    assert (bad.expected, bad.actual) == (0, 1)
    assert sequential_run(p, (1, 0))[0] == bad.expected


def test_verify_array_max_with_addition(programs, bounds):
    verdict = verify(programs["array-max"], Decomposition(merge=MergeOp.ADD), bounds)
    assert verdict.kind == VerdictKind.COUNTEREXAMPLE
    assert verdict.segments == [[1], [1]]
    assert (verdict.expected, verdict.actual) == (1, 2)
    assert verdict.render() == "Counterexample [1] [1] expected 1 actual 2"


def test_verify_array_count(programs, bounds):
    assert verify(programs["array-count"], Decomposition(merge=MergeOp.ADD), bounds).valid


def test_constant_prefix_raises_segment_minimum(bounds):
    const2 = Decomposition(merge=MergeOp.ADD, prefix=PrefixSpec.const(2))
    assert candidate_bounds(const2, bounds).min_seg_len == 3
    assert candidate_bounds(Decomposition(merge=MergeOp.ADD), bounds) == bounds
    wide = bounds.with_m(2, 3)
    assert candidate_bounds(const2, wide) == wide


def test_verify_number_of_123_constant_prefix(programs, bounds):
    p = programs["number-of-123"]
    d = Decomposition(merge=MergeOp.ADD, prefix=PrefixSpec.const(2))
    verdict = verify(p, d, bounds)
    assert verdict.valid
    # only the 3 + 3 split of six elements is long enough
    assert verdict.checked == 4 ** 6
    with pytest.raises(ConfigError):
        verify(p, d, bounds.with_m(3))


@pytest.mark.slow
def test_verify_number_of_123_three_long_segments(programs):
    d = Decomposition(merge=MergeOp.ADD, prefix=PrefixSpec.const(2))
    b = VerifBounds(m=3, max_total_len=9, domain=(1, 2, 3))
    assert verify(programs["number-of-123"], d, b).valid


def test_verify_reports_evaluation_errors(bounds):
    p = parse_program("(program p (state (x 0)) (step (x (if (= elem 3) (+ x +inf) (- x +inf)))) (output x))")
    verdict = verify(p, Decomposition(merge=MergeOp.ADD), bounds)
    assert verdict.kind == VerdictKind.ERROR
    assert "infinities" in verdict.description


@pytest.mark.slow
def test_valid_verdict_survives_random_resampling(programs):
    p = programs["seen-2-after-1"]
    d = Decomposition(merge=MergeOp.MAX, prefix=PrefixSpec.cond(ELEM_IS_2))
    b = VerifBounds(m=3, max_total_len=6, domain=(0, 1, 2, 3))
    assert verify(p, d, b).valid
    rng = random.Random(7)
    for _ in range(500):
        lengths = [rng.randint(1, 2) for _ in range(3)]
        segments = [tuple(rng.choice(b.domain) for _ in range(n)) for n in lengths]
        assert parallel_outputs(p, d, segments) == sequential_run(p, append(segments))[0]
