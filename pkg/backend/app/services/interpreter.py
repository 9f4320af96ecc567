"""
Reference sequential semantics of a Program.

Everything here is a pure function of immutable inputs, so it can be called
from any number of worker threads at once.
"""

import threading
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from ..models.dsl import Program
from ..models.scalar import Scalar
from .evaluator import eval_expr

State = Tuple[Scalar, ...]
InputArray = Tuple[Scalar, ...]

_MISSING = object()


@dataclass(frozen=True)
class FoldTrace:
    final_state: State
    iterations: int


def step(p: Program, state: Sequence[Scalar], elem: Scalar) -> State:
    # simultaneous update: every field reads the old state
    return tuple(eval_expr(e, state, elem) for e in p.step)


def fold_run(p: Program, d: Sequence[Scalar], array: Iterable[Scalar]) -> FoldTrace:
    state = tuple(d)
    iterations = 0
    for elem in array:
        state = step(p, state, elem)
        iterations += 1
    return FoldTrace(final_state=state, iterations=iterations)


def output(p: Program, d: Sequence[Scalar]) -> Scalar:
    return eval_expr(p.output, d)


def append(arrays: Iterable[Sequence[Scalar]]) -> InputArray:
    joined = []
    for a in arrays:
        joined.extend(a)
    return tuple(joined)


def sequential_run(p: Program, array: Sequence[Scalar]) -> Tuple[Scalar, int]:
    trace = fold_run(p, p.init, array)
    return output(p, trace.final_state), trace.iterations


class OutputCache:
    """Memoized ``sequential_run(p, A).out`` keyed by the array.

    Verification asks for the same arrays over and over (every candidate needs
    the sequential answer and the per-worker answers), so one cache is shared
    across candidates for the same program.
    """

    def __init__(self, program: Program):
        self.program = program
        self._values: Dict[InputArray, Scalar] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, array: Sequence[Scalar]) -> Scalar:
        key = tuple(array)
        value = self._values.get(key, _MISSING)
        if value is not _MISSING:
            with self._lock:
                self.hits += 1
            return value
        value, _ = sequential_run(self.program, key)
        with self._lock:
            self._values[key] = value
            self.misses += 1
        return value

    def __len__(self) -> int:
        return len(self._values)
