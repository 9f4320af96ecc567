from enum import Enum
from fractions import Fraction
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from .decomposition import Decomposition, Hypothesis
from .scalar import Special

ScalarField = Union[int, Special]


class VerdictKind(str, Enum):
    VALID = "valid"
    COUNTEREXAMPLE = "counterexample"
    ERROR = "error"


class Verdict(BaseModel):
    kind: VerdictKind
    segments: Optional[List[List[ScalarField]]] = None
    expected: Optional[ScalarField] = None
    actual: Optional[ScalarField] = None
    description: Optional[str] = None
    checked: int = 0

    @property
    def valid(self) -> bool:
        return self.kind == VerdictKind.VALID

    def render(self) -> str:
        if self.kind == VerdictKind.VALID:
            return f"Valid ({self.checked} segmentations checked)"
        segs = " ".join("[" + " ".join(str(x) for x in seg) + "]" for seg in self.segments or [])
        if self.kind == VerdictKind.COUNTEREXAMPLE:
            return f"Counterexample {segs} expected {self.expected} actual {self.actual}"
        return f"Error {segs}: {self.description}"


class PrefixLengthStats(BaseModel):
    """Longest borrowed prefix of each verified segmentation."""

    segmentations: int
    min: int
    max: int
    mean: float


class SynthesisStats(BaseModel):
    candidates_tried: int = 0
    arrays_checked: int = 0
    elapsed: float = 0.0
    # only for conditional prefixes, whose length varies by input
    prefix_lengths: Optional[PrefixLengthStats] = None


class SynthesisResult(BaseModel):
    found: bool
    hypothesis: Optional[Hypothesis] = None
    decomposition: Optional[Decomposition] = None
    stats: SynthesisStats = Field(default_factory=SynthesisStats)

    def render(self) -> str:
        if not self.found:
            return "unknown"
        return f"{self.hypothesis.value} {self.decomposition.describe()}"


class PhaseEvent(BaseModel):
    phase: int
    segment: int
    started: float
    finished: float


class CostReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    s: List[int]
    p: List[int]
    T_s: int
    T_p: int
    T_f: int
    T_c: int
    X: Fraction
    wall_sequential: Optional[float] = None
    wall_parallel: Optional[float] = None
    schedule: List[PhaseEvent] = Field(default_factory=list)
    prefix_lengths: List[int] = Field(default_factory=list)
    cross_check: Optional[bool] = None

    @field_serializer("X")
    def serialize_x(self, x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    def summary(self) -> dict:
        return {
            "s": self.s,
            "p": self.p,
            "T_s": self.T_s,
            "T_p": self.T_p,
            "T_f": self.T_f,
            "T_c": self.T_c,
            "X": f"{self.X.numerator}/{self.X.denominator} ({float(self.X):.3f})",
        }


class BenchRow(BaseModel):
    benchmark: str
    vars: int
    table_vars: Optional[int] = None
    hypothesis: str
    merge: str
    prefix: str
    time_s: float
    status: str
    expected: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"
