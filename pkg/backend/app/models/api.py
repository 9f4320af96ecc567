"""Request bodies of the HTTP service."""

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .bounds import RunConfig, parse_domain
from .decomposition import Decomposition, MergeOp, PrefixSpec


class ConfigIn(BaseModel):
    segments: Optional[List[int]] = None
    max_len: Optional[int] = None
    min_seg_len: Optional[int] = None
    domain: Optional[str] = Field(default=None, description="Comma separated values, e.g. '0,1,2,3'")
    merge_menu: Optional[List[str]] = None
    strict_menu: bool = False
    max_const_prefix: Optional[int] = None
    jobs: Optional[int] = None
    timeout: Optional[float] = None

    def to_run_config(self) -> RunConfig:
        overrides = self.model_dump(exclude_none=True, exclude={"domain", "merge_menu"})
        if self.domain is not None:
            overrides["domain"] = parse_domain(self.domain)
        if self.merge_menu:
            overrides["merge_menu"] = [MergeOp.parse(op) for op in self.merge_menu]
        return RunConfig(**overrides)


class ProgramRef(BaseModel):
    program: Optional[str] = Field(default=None, description="Program source in the .gsp syntax")
    benchmark: Optional[str] = None

    @model_validator(mode="after")
    def exactly_one_source(self):
        if (self.program is None) == (self.benchmark is None):
            raise ValueError("give either 'program' or 'benchmark'")
        return self


class DecompositionIn(BaseModel):
    merge: str
    prefix_length: Optional[int] = Field(default=None, ge=0)
    prefix_cond: Optional[str] = None

    @field_validator("merge")
    @classmethod
    def known_merge(cls, v):
        MergeOp.parse(v)
        return v

    @model_validator(mode="after")
    def one_prefix(self):
        if self.prefix_length is not None and self.prefix_cond is not None:
            raise ValueError("prefix_length and prefix_cond are mutually exclusive")
        return self

    def to_decomposition(self) -> Decomposition:
        # imported here: the parser lives in the service layer
        from ..services.parser import parse_bool_expr

        if self.prefix_length is not None:
            prefix = PrefixSpec.const(self.prefix_length)
        elif self.prefix_cond is not None:
            prefix = PrefixSpec.cond(parse_bool_expr(self.prefix_cond))
        else:
            prefix = PrefixSpec.none()
        return Decomposition(merge=MergeOp.parse(self.merge), prefix=prefix)


class SynthesizeRequest(ProgramRef):
    config: ConfigIn = Field(default_factory=ConfigIn)


class VerifyRequest(ProgramRef):
    decomposition: DecompositionIn
    config: ConfigIn = Field(default_factory=ConfigIn)


class RunRequest(ProgramRef):
    decomposition: Optional[DecompositionIn] = None
    input: str = Field(description="Whitespace separated values; -inf, +inf and eof are accepted")
    segments: int = Field(default=2, ge=1)
    workers: int = Field(default=1, ge=1)
    config: ConfigIn = Field(default_factory=ConfigIn)
