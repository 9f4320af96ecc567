"""
Extended integer scalars.

A Scalar is either a plain Python ``int`` or one of the three ``Special``
markers: -inf, +inf and the end-of-input sentinel ``eof``. Ints are exact and
must stay within the signed 64-bit range; arithmetic saturates at the
infinities; ``eof`` only takes part in equality.
"""

from enum import Enum
from typing import Tuple, Union

from .errors import EvalError

INT_MIN = -(2 ** 63)
INT_MAX = 2 ** 63 - 1


class Special(str, Enum):
    NEG_INF = "-inf"
    POS_INF = "+inf"
    EOF = "eof"

    def __str__(self) -> str:
        return self.value


Scalar = Union[int, Special]

NEG_INF = Special.NEG_INF
POS_INF = Special.POS_INF
EOF = Special.EOF


def is_infinite(x: Scalar) -> bool:
    return x is NEG_INF or x is POS_INF


def _checked(value: int) -> int:
    if value < INT_MIN or value > INT_MAX:
        raise EvalError(f"integer overflow: {value}")
    return value


def _ordered(x: Scalar, what: str) -> None:
    if x is EOF:
        raise EvalError(f"Eof is unordered (used in {what})")


def parse_scalar(token: str) -> Scalar:
    """Parse one scalar token: an integer, -inf, +inf or eof."""
    lowered = token.strip().lower()
    if lowered in ("-inf", "+inf", "eof"):
        return Special(lowered)
    if lowered == "inf":
        return POS_INF
    value = int(lowered)
    return _checked(value)


def sort_key(x: Scalar) -> Tuple[int, int]:
    """Total order used for reporting: -inf < ints < +inf < eof."""
    if x is NEG_INF:
        return (0, 0)
    if x is POS_INF:
        return (2, 0)
    if x is EOF:
        return (3, 0)
    return (1, x)


def scalar_eq(a: Scalar, b: Scalar) -> bool:
    if isinstance(a, Special) or isinstance(b, Special):
        return a is b
    return a == b


def scalar_lt(a: Scalar, b: Scalar) -> bool:
    _ordered(a, "comparison")
    _ordered(b, "comparison")
    return sort_key(a) < sort_key(b)


def scalar_le(a: Scalar, b: Scalar) -> bool:
    return scalar_lt(a, b) or scalar_eq(a, b)


def negate(x: Scalar) -> Scalar:
    _ordered(x, "subtraction")
    if x is NEG_INF:
        return POS_INF
    if x is POS_INF:
        return NEG_INF
    return _checked(-x)


def add(a: Scalar, b: Scalar) -> Scalar:
    _ordered(a, "addition")
    _ordered(b, "addition")
    if is_infinite(a) or is_infinite(b):
        if is_infinite(a) and is_infinite(b) and a is not b:
            raise EvalError("undefined sum of opposite infinities")
        return a if is_infinite(a) else b
    return _checked(a + b)


def sub(a: Scalar, b: Scalar) -> Scalar:
    return add(a, negate(b))


def _sign(x: Scalar) -> int:
    if x is NEG_INF:
        return -1
    if x is POS_INF:
        return 1
    return (x > 0) - (x < 0)


def mul(a: Scalar, b: Scalar) -> Scalar:
    _ordered(a, "multiplication")
    _ordered(b, "multiplication")
    if is_infinite(a) or is_infinite(b):
        # 0 * inf is taken as 0
        sign = _sign(a) * _sign(b)
        if sign == 0:
            return 0
        return POS_INF if sign > 0 else NEG_INF
    return _checked(a * b)


def smin(a: Scalar, b: Scalar) -> Scalar:
    return a if scalar_le(a, b) else b


def smax(a: Scalar, b: Scalar) -> Scalar:
    return b if scalar_le(a, b) else a
