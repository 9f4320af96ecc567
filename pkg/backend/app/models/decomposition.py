from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from .dsl import BoolExpr, prefix_predicate_problems, render_bool


class MergeOp(str, Enum):
    ADD = "+"
    MIN = "min"
    MAX = "max"
    MUL = "*"
    FIRST = "first"
    LAST = "last"

    @classmethod
    def parse(cls, token: str) -> "MergeOp":
        aliases = {"add": cls.ADD, "plus": cls.ADD, "mul": cls.MUL, "times": cls.MUL}
        token = token.strip().lower()
        if token in aliases:
            return aliases[token]
        return cls(token)


DEFAULT_MERGE_MENU = [MergeOp.ADD, MergeOp.MIN, MergeOp.MAX, MergeOp.MUL, MergeOp.FIRST, MergeOp.LAST]
STRICT_MERGE_MENU = [MergeOp.ADD, MergeOp.MIN, MergeOp.MAX]


class PrefixKind(str, Enum):
    NONE = "none"
    CONST = "const"
    COND = "cond"


class Hypothesis(str, Enum):
    NO_PREFIX = "SyntNoPrefix"
    CONST_PREFIX = "SyntConstPrefix"
    COND_PREFIX = "SyntCondPrefix"


class PrefixSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: PrefixKind = PrefixKind.NONE
    length: Optional[int] = None
    predicate: Optional[Any] = None

    @model_validator(mode="after")
    def check_shape(self):
        if self.kind == PrefixKind.CONST:
            if self.length is None or self.length < 0:
                raise ValueError("constant prefix needs a non-negative length")
        elif self.kind == PrefixKind.COND:
            if self.predicate is None:
                raise ValueError("conditional prefix needs a predicate")
            problems = prefix_predicate_problems(self.predicate)
            if problems:
                raise ValueError("; ".join(problems))
        return self

    @classmethod
    def none(cls) -> "PrefixSpec":
        return cls()

    @classmethod
    def const(cls, length: int) -> "PrefixSpec":
        return cls(kind=PrefixKind.CONST, length=length)

    @classmethod
    def cond(cls, predicate: BoolExpr) -> "PrefixSpec":
        return cls(kind=PrefixKind.COND, predicate=predicate)

    @field_serializer("predicate")
    def serialize_predicate(self, predicate) -> Optional[str]:
        if predicate is None:
            return None
        return render_bool(predicate)

    def render(self) -> str:
        if self.kind == PrefixKind.CONST:
            return str(self.length)
        if self.kind == PrefixKind.COND:
            return render_bool(self.predicate)
        return "-"


class Decomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    merge: MergeOp
    prefix: PrefixSpec = PrefixSpec()

    def describe(self) -> str:
        if self.prefix.kind == PrefixKind.CONST:
            return f"{self.merge.value} prefix_length={self.prefix.length}"
        if self.prefix.kind == PrefixKind.COND:
            return f"{self.merge.value} prefix_cond={self.prefix.render()}"
        return self.merge.value

