"""
Three-stage search for a parallel decomposition of a fold.

Hypotheses are tried from the simplest up: merge only, merge plus a constant
prefix, merge plus a conditional prefix. Within a stage candidates are tried in
a fixed order and the first one that verifies for every configured segment
count wins. Candidates may be checked on several threads, but the winner is
always the earliest verified candidate in that order.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from ..models.bounds import CandidateSpace, VerifBounds
from ..models.decomposition import Decomposition, Hypothesis, PrefixSpec
from ..models.dsl import ELEM, And, BoolExpr, Cmp, CmpOp, Const, Program
from ..models.errors import ConfigError, EvalError, SynthesisTimeout
from ..models.results import SynthesisResult, SynthesisStats, VerdictKind
from .evaluator import eval_predicate
from .interpreter import OutputCache
from .verifier import candidate_bounds, prefix_length_stats, verify

logger = logging.getLogger(__name__)

DEFAULT_SEGMENT_COUNTS = (2, 3)
_OP_ORDER = {CmpOp.EQ: 0, CmpOp.LE: 1, CmpOp.GE: 2}


@dataclass(frozen=True)
class Candidate:
    decomposition: Decomposition


@dataclass
class CandidateOutcome:
    valid: bool
    arrays_checked: int
    reason: str = ""


def enumerate_conditions(
    p: Program,
    s: CandidateSpace,
    b: Optional[VerifBounds] = None,
) -> List[BoolExpr]:
    """Predicates over ``elem`` in search order, one per distinct truth table.

    Truth tables are taken over the verification domain plus the terminator.
    Predicates that hold everywhere or nowhere are dropped, as are predicates
    that cannot be evaluated on some domain value.
    """
    b = b or VerifBounds()
    values = b.predicate_domain()
    constants = s.constants_for(p, b)
    ops = sorted(s.atom_ops, key=lambda op: _OP_ORDER.get(op, len(_OP_ORDER)))

    # (rank key, predicate); constants are already sorted largest first
    atoms: List[Tuple[Tuple[int, int], BoolExpr]] = []
    for ci, c in enumerate(constants):
        for op in ops:
            atoms.append(((ci, _OP_ORDER.get(op, len(_OP_ORDER))), Cmp(op, ELEM, Const(c))))

    ranked = []
    for size in range(1, s.max_conjuncts + 1):
        for group in combinations(atoms, size):
            pred = group[0][1]
            for _, atom in group[1:]:
                pred = And(pred, atom)
            ranked.append(((size, tuple(key for key, _ in group)), pred))
    ranked.sort(key=lambda item: item[0])

    seen = set()
    result = []
    for _, pred in ranked:
        try:
            table = tuple(eval_predicate(pred, v) for v in values)
        except EvalError:
            continue
        if all(table) or not any(table) or table in seen:
            continue
        seen.add(table)
        result.append(pred)
    return result


class Synthesizer:
    def __init__(
        self,
        program: Program,
        bounds: VerifBounds,
        space: CandidateSpace,
        segment_counts: Sequence[int] = DEFAULT_SEGMENT_COUNTS,
        jobs: int = 1,
        timeout: Optional[float] = None,
    ):
        self.program = program
        self.bounds = bounds
        self.space = space
        self.segment_counts = sorted({m for m in segment_counts if m >= 2})
        self.jobs = max(1, jobs)
        self.timeout = timeout
        self.cache = OutputCache(program)
        self.stats = SynthesisStats()
        self._deadline: Optional[float] = None
        if not self.segment_counts:
            raise ConfigError("at least one segment count of 2 or more is required")
        if not any(bounds.with_m(m).feasible for m in self.segment_counts):
            raise ConfigError(
                f"bounds are infeasible: no segment count in {self.segment_counts} fits "
                f"{bounds.data_len_max} elements with segments of at least {bounds.min_seg_len}"
            )

    def check(self, candidate: Candidate) -> CandidateOutcome:
        checked = 0
        tried_any = False
        for m in self.segment_counts:
            bounds = candidate_bounds(candidate.decomposition, self.bounds.with_m(m))
            if not bounds.feasible:
                logger.debug(f"Skipping m={m} for {candidate.decomposition.describe()}: bounds infeasible")
                continue
            tried_any = True
            verdict = verify(self.program, candidate.decomposition, bounds, self.cache, self._deadline)
            checked += verdict.checked
            if verdict.kind != VerdictKind.VALID:
                return CandidateOutcome(False, checked, verdict.render())
        if not tried_any:
            return CandidateOutcome(False, checked, "no segment count can be checked")
        return CandidateOutcome(True, checked)

    def _search(self, candidates: List[Candidate]) -> Optional[Decomposition]:
        outcomes = self._outcomes(candidates)
        for candidate, outcome in zip(candidates, outcomes):
            self.stats.candidates_tried += 1
            self.stats.arrays_checked += outcome.arrays_checked
            if outcome.valid:
                logger.info(f"✅ Verified {candidate.decomposition.describe()}")
                return candidate.decomposition
            logger.debug(f"Rejected {candidate.decomposition.describe()}: {outcome.reason}")
        return None

    def _outcomes(self, candidates: List[Candidate]) -> Iterable[CandidateOutcome]:
        """Outcomes in candidate order; stops producing after the first valid one."""
        if self.jobs == 1:
            for candidate in candidates:
                outcome = self.check(candidate)
                yield outcome
                if outcome.valid:
                    return
            return
        window = self.jobs * 2
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            for start in range(0, len(candidates), window):
                futures = [pool.submit(self.check, c) for c in candidates[start:start + window]]
                try:
                    for future in futures:
                        outcome = future.result()
                        yield outcome
                        if outcome.valid:
                            return
                finally:
                    for future in futures:
                        future.cancel()

    def no_prefix_candidates(self) -> List[Candidate]:
        return [Candidate(Decomposition(merge=op)) for op in self.space.merge_ops]

    def constant_prefix_candidates(self) -> List[Candidate]:
        return [
            Candidate(Decomposition(merge=op, prefix=PrefixSpec.const(c)))
            for c in range(1, self.space.max_const_prefix + 1)
            for op in self.space.merge_ops
        ]

    def conditional_prefix_candidates(self) -> List[Candidate]:
        return [
            Candidate(Decomposition(merge=op, prefix=PrefixSpec.cond(pred)))
            for pred in enumerate_conditions(self.program, self.space, self.bounds)
            for op in self.space.merge_ops
        ]

    def run(self) -> SynthesisResult:
        started = time.monotonic()
        if self.timeout is not None:
            self._deadline = started + self.timeout
        stages = [
            (Hypothesis.NO_PREFIX, self.no_prefix_candidates),
            (Hypothesis.CONST_PREFIX, self.constant_prefix_candidates),
            (Hypothesis.COND_PREFIX, self.conditional_prefix_candidates),
        ]
        try:
            for hypothesis, make_candidates in stages:
                logger.info(f"Trying {hypothesis.value} for {self.program.name}")
                found = self._search(make_candidates())
                if found is not None:
                    self.stats.elapsed = time.monotonic() - started
                    if hypothesis == Hypothesis.COND_PREFIX:
                        self.stats.prefix_lengths = prefix_length_stats(
                            found, [self.bounds.with_m(m) for m in self.segment_counts]
                        )
                    return SynthesisResult(
                        found=True, hypothesis=hypothesis, decomposition=found, stats=self.stats
                    )
        except SynthesisTimeout:
            raise SynthesisTimeout(self.timeout, self.stats.candidates_tried) from None
        self.stats.elapsed = time.monotonic() - started
        logger.info(f"No decomposition found for {self.program.name}")
        return SynthesisResult(found=False, stats=self.stats)


def synt_no_prefix(p: Program, b: VerifBounds, s: CandidateSpace, **kwargs) -> Optional[Decomposition]:
    synth = Synthesizer(p, b, s, **kwargs)
    return synth._search(synth.no_prefix_candidates())


def synt_constant_prefix(p: Program, b: VerifBounds, s: CandidateSpace, **kwargs) -> Optional[Decomposition]:
    synth = Synthesizer(p, b, s, **kwargs)
    return synth._search(synth.constant_prefix_candidates())


def synt_conditional_prefix(p: Program, b: VerifBounds, s: CandidateSpace, **kwargs) -> Optional[Decomposition]:
    synth = Synthesizer(p, b, s, **kwargs)
    return synth._search(synth.conditional_prefix_candidates())


def grassp(
    p: Program,
    b: VerifBounds,
    s: CandidateSpace,
    segment_counts: Sequence[int] = DEFAULT_SEGMENT_COUNTS,
    jobs: int = 1,
    timeout: Optional[float] = None,
) -> SynthesisResult:
    return Synthesizer(p, b, s, segment_counts=segment_counts, jobs=jobs, timeout=timeout).run()


__all__ = [
    "Synthesizer",
    "enumerate_conditions",
    "synt_no_prefix",
    "synt_constant_prefix",
    "synt_conditional_prefix",
    "grassp",
    "DEFAULT_SEGMENT_COUNTS",
]
