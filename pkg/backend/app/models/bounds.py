from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config import settings
from .decomposition import DEFAULT_MERGE_MENU, STRICT_MERGE_MENU, MergeOp
from .dsl import CmpOp, Program
from .scalar import EOF, Scalar, Special, parse_scalar, sort_key

ScalarField = Union[int, Special]


def parse_domain(text: str) -> Tuple[Scalar, ...]:
    """Parse a comma separated list of scalars such as ``0,1,2,3`` or ``0,eof``."""
    values = [parse_scalar(part) for part in text.split(",") if part.strip()]
    if not values:
        raise ValueError("domain must not be empty")
    return tuple(values)


class VerifBounds(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(default=2, ge=2)
    max_total_len: int = Field(default=6, ge=1)
    min_seg_len: int = Field(default=1, ge=1)
    domain: Tuple[ScalarField, ...] = (0, 1, 2, 3)
    # appended to the final segment of every enumerated array when set
    terminator: Optional[ScalarField] = None

    @field_validator("domain")
    @classmethod
    def check_domain(cls, v):
        if not v:
            raise ValueError("domain must not be empty")
        if len(set(v)) != len(v):
            raise ValueError("domain values must be distinct")
        return v

    @model_validator(mode="after")
    def check_terminator(self):
        if self.terminator is not None and self.terminator in self.domain:
            raise ValueError("terminator must not be part of the value domain")
        return self

    @property
    def data_len_max(self) -> int:
        return self.max_total_len - (1 if self.terminator is not None else 0)

    @property
    def feasible(self) -> bool:
        return self.m * self.min_seg_len <= self.data_len_max

    def predicate_domain(self) -> Tuple[Scalar, ...]:
        if self.terminator is None:
            return tuple(self.domain)
        return tuple(self.domain) + (self.terminator,)

    def with_m(self, m: int, min_seg_len: Optional[int] = None) -> "VerifBounds":
        return self.model_copy(update={"m": m, "min_seg_len": min_seg_len or self.min_seg_len})


class CandidateSpace(BaseModel):
    model_config = ConfigDict(frozen=True)

    merge_ops: List[MergeOp] = Field(default_factory=lambda: list(DEFAULT_MERGE_MENU))
    max_const_prefix: int = Field(default=3, ge=0)
    cond_constants: Optional[List[ScalarField]] = None
    max_conjuncts: int = Field(default=2, ge=1)
    atom_ops: List[CmpOp] = Field(default_factory=lambda: [CmpOp.EQ, CmpOp.LE, CmpOp.GE])

    @field_validator("merge_ops", "atom_ops")
    @classmethod
    def check_not_empty(cls, v):
        if not v:
            raise ValueError("candidate lists must not be empty")
        return v

    def constants_for(self, program: Program, bounds: VerifBounds) -> List[Scalar]:
        """Program constants plus 0, 1, 2 and Eof when the program or the input convention uses it."""
        if self.cond_constants is not None:
            return sorted(set(self.cond_constants), key=sort_key, reverse=True)
        values = set(program.constants()) | {0, 1, 2}
        values.discard(EOF)
        if EOF in program.constants() or bounds.terminator is EOF or EOF in bounds.domain:
            values.add(EOF)
        return sorted(values, key=sort_key, reverse=True)


class RunConfig(BaseModel):
    segments: List[int] = Field(default_factory=lambda: list(settings.SEGMENTS))
    max_len: int = Field(default=settings.MAX_LEN, ge=1)
    min_seg_len: int = Field(default=settings.MIN_SEG_LEN, ge=1)
    domain: Tuple[ScalarField, ...] = Field(default_factory=lambda: parse_domain(settings.DOMAIN))
    merge_menu: Optional[List[MergeOp]] = None
    strict_menu: bool = False
    max_const_prefix: int = Field(default=settings.MAX_CONST_PREFIX, ge=0)
    max_conjuncts: int = Field(default=settings.MAX_CONJUNCTS, ge=1)
    jobs: int = Field(default=settings.JOBS, ge=1)
    timeout: float = Field(default=settings.TIMEOUT, gt=0)
    format: str = "text"

    @field_validator("segments")
    @classmethod
    def check_segments(cls, v):
        if not v or any(m < 1 for m in v):
            raise ValueError("segment counts must be positive")
        return sorted(set(v))

    @field_validator("format")
    @classmethod
    def check_format(cls, v):
        if v not in ("text", "tsv"):
            raise ValueError("format must be 'text' or 'tsv'")
        return v

    def bounds(self, terminator: Optional[Scalar] = None) -> VerifBounds:
        m = max(2, min(self.segments))
        return VerifBounds(
            m=m,
            max_total_len=self.max_len,
            min_seg_len=self.min_seg_len,
            domain=tuple(self.domain),
            terminator=terminator,
        )

    def space(self) -> CandidateSpace:
        if self.merge_menu:
            menu = list(self.merge_menu)
        elif self.strict_menu:
            menu = list(STRICT_MERGE_MENU)
        else:
            menu = list(DEFAULT_MERGE_MENU)
        return CandidateSpace(
            merge_ops=menu,
            max_const_prefix=self.max_const_prefix,
            max_conjuncts=self.max_conjuncts,
        )

    def synthesis_segments(self) -> List[int]:
        return [m for m in self.segments if m >= 2]
