from .errors import (
    BenchmarkNotFound,
    ConfigError,
    DslSyntaxError,
    EvalError,
    GrasspError,
    ProgramValidationError,
    SynthesisTimeout,
    WorkerError,
)
from .scalar import EOF, NEG_INF, POS_INF, Scalar, Special
