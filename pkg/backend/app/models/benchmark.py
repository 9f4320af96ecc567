from typing import Optional, Union

from pydantic import BaseModel, ConfigDict

from .decomposition import Hypothesis, MergeOp
from .dsl import Program
from .scalar import Special


class BenchmarkEntry(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    description: str
    program: Program
    source: str
    # None for programs that have no decomposition
    expected_hypothesis: Optional[Hypothesis] = None
    expected_merge: Optional[MergeOp] = None
    # constant length as text ("1") or predicate text ("(= elem 2)"); "-" when no prefix
    expected_prefix: str = "-"
    # the "# Vars" column of the reference table; None outside it
    table_vars: Optional[int] = None
    terminator: Optional[Union[int, Special]] = None

    @property
    def arity(self) -> int:
        return self.program.arity
