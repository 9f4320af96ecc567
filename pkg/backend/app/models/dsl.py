"""
Expression trees and programs of the fold DSL.

A Program is a left fold: ``init`` is the starting state vector, ``step[i]``
computes the new value of field i from the old state and the current element,
and ``output`` reads the final state.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Tuple, Union

from .scalar import Scalar

MAX_DEPTH = 32


class ArithOp(str, Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    MIN = "min"
    MAX = "max"


class CmpOp(str, Enum):
    EQ = "="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="

    @property
    def ordered(self) -> bool:
        return self not in (CmpOp.EQ, CmpOp.NE)


@dataclass(frozen=True, slots=True)
class Const:
    value: Scalar


@dataclass(frozen=True, slots=True)
class CurrentInput:
    pass


@dataclass(frozen=True, slots=True)
class StateField:
    index: int


@dataclass(frozen=True, slots=True)
class If:
    cond: "BoolExpr"
    then: "Expr"
    other: "Expr"


@dataclass(frozen=True, slots=True)
class BinOp:
    op: ArithOp
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Cmp:
    op: CmpOp
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class And:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True, slots=True)
class Or:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True, slots=True)
class Not:
    operand: "BoolExpr"


Expr = Union[Const, CurrentInput, StateField, If, BinOp]
BoolExpr = Union[Cmp, And, Or, Not]
Node = Union[Expr, BoolExpr]

ELEM = CurrentInput()


def children(node: Node) -> Tuple[Node, ...]:
    if isinstance(node, If):
        return (node.cond, node.then, node.other)
    if isinstance(node, (BinOp, Cmp, And, Or)):
        return (node.left, node.right)
    if isinstance(node, Not):
        return (node.operand,)
    return ()


def walk(node: Node) -> Iterator[Node]:
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(children(current)))


def depth(node: Node) -> int:
    deepest = 0
    stack = [(node, 1)]
    while stack:
        current, level = stack.pop()
        deepest = max(deepest, level)
        stack.extend((kid, level + 1) for kid in children(current))
    return deepest


def uses_input(node: Node) -> bool:
    return any(isinstance(n, CurrentInput) for n in walk(node))


def constants(node: Node) -> Iterator[Scalar]:
    for n in walk(node):
        if isinstance(n, Const):
            yield n.value


@dataclass(frozen=True)
class Program:
    name: str
    fields: Tuple[str, ...]
    init: Tuple[Scalar, ...]
    step: Tuple[Expr, ...]
    output: Expr

    @property
    def arity(self) -> int:
        return len(self.init)

    def nodes(self) -> Iterator[Node]:
        for e in self.step:
            yield from walk(e)
        yield from walk(self.output)

    def constants(self) -> Tuple[Scalar, ...]:
        """Constants in order of first appearance (init first, then step, then output)."""
        seen = []
        for value in list(self.init) + [n.value for n in self.nodes() if isinstance(n, Const)]:
            if value not in seen:
                seen.append(value)
        return tuple(seen)


def render_expr(e: Expr, fields: Tuple[str, ...] = ()) -> str:
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, CurrentInput):
        return "elem"
    if isinstance(e, StateField):
        return fields[e.index] if e.index < len(fields) else f"s{e.index}"
    if isinstance(e, If):
        return f"(if {render_bool(e.cond, fields)} {render_expr(e.then, fields)} {render_expr(e.other, fields)})"
    return f"({e.op.value} {render_expr(e.left, fields)} {render_expr(e.right, fields)})"


def render_bool(b: BoolExpr, fields: Tuple[str, ...] = ()) -> str:
    if isinstance(b, Cmp):
        return f"({b.op.value} {render_expr(b.left, fields)} {render_expr(b.right, fields)})"
    if isinstance(b, And):
        return f"(and {render_bool(b.left, fields)} {render_bool(b.right, fields)})"
    if isinstance(b, Or):
        return f"(or {render_bool(b.left, fields)} {render_bool(b.right, fields)})"
    return f"(not {render_bool(b.operand, fields)})"


def is_bool_expr(node: object) -> bool:
    return isinstance(node, (Cmp, And, Or, Not))


def prefix_predicate_problems(pred: object) -> list:
    """A prefix predicate may only look at the current element and constants."""
    if not is_bool_expr(pred):
        return ["prefix predicate must be a boolean expression"]
    problems = []
    if any(isinstance(n, StateField) for n in walk(pred)):
        problems.append("prefix predicate may not read state fields")
    if depth(pred) > MAX_DEPTH:
        problems.append(f"expression depth exceeds {MAX_DEPTH}")
    return problems
