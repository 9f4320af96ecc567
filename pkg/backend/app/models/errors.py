from typing import List, Optional


class GrasspError(Exception):
    """Base class for every error raised by the toolkit."""


class DslSyntaxError(GrasspError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class ProgramValidationError(GrasspError):
    def __init__(self, violations: List[str]):
        super().__init__("invalid program: " + "; ".join(violations))
        self.violations = list(violations)


class EvalError(GrasspError):
    """Raised when an expression cannot be evaluated (unordered Eof, overflow, ...)."""


class ConfigError(GrasspError):
    pass


class BenchmarkNotFound(GrasspError):
    def __init__(self, name: str, available: List[str]):
        super().__init__(f"unknown benchmark '{name}'; available: {', '.join(available)}")
        self.name = name
        self.available = available


class WorkerError(GrasspError):
    def __init__(self, segment_index: int, cause: Exception):
        super().__init__(f"worker for segment {segment_index} failed: {cause}")
        self.segment_index = segment_index
        self.cause = cause


class SynthesisTimeout(GrasspError):
    def __init__(self, seconds: float, candidates_tried: Optional[int] = None):
        super().__init__(f"synthesis exceeded {seconds:g}s")
        self.seconds = seconds
        self.candidates_tried = candidates_tried
