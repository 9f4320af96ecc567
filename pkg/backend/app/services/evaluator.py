"""Expression evaluation over a state vector and the current input element."""

from typing import Optional, Sequence

from ..models.dsl import And, ArithOp, BinOp, BoolExpr, Cmp, CmpOp, Const, CurrentInput, Expr, If, Not, Or, StateField
from ..models.errors import EvalError
from ..models.scalar import Scalar, add, mul, scalar_eq, scalar_le, scalar_lt, smax, smin, sub

_ARITH = {
    ArithOp.ADD: add,
    ArithOp.SUB: sub,
    ArithOp.MUL: mul,
    ArithOp.MIN: smin,
    ArithOp.MAX: smax,
}

_COMPARE = {
    CmpOp.EQ: scalar_eq,
    CmpOp.NE: lambda a, b: not scalar_eq(a, b),
    CmpOp.LT: scalar_lt,
    CmpOp.LE: scalar_le,
    CmpOp.GT: lambda a, b: scalar_lt(b, a),
    CmpOp.GE: lambda a, b: scalar_le(b, a),
}


def eval_expr(e: Expr, state: Sequence[Scalar], elem: Optional[Scalar] = None) -> Scalar:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, StateField):
        return state[e.index]
    if isinstance(e, CurrentInput):
        if elem is None:
            raise EvalError("current input is not available here")
        return elem
    if isinstance(e, If):
        # only the selected branch is evaluated
        if eval_bool(e.cond, state, elem):
            return eval_expr(e.then, state, elem)
        return eval_expr(e.other, state, elem)
    if isinstance(e, BinOp):
        return _ARITH[e.op](eval_expr(e.left, state, elem), eval_expr(e.right, state, elem))
    raise EvalError(f"not an expression: {e!r}")


def eval_bool(b: BoolExpr, state: Sequence[Scalar], elem: Optional[Scalar] = None) -> bool:
    if isinstance(b, Cmp):
        return _COMPARE[b.op](eval_expr(b.left, state, elem), eval_expr(b.right, state, elem))
    if isinstance(b, And):
        return eval_bool(b.left, state, elem) and eval_bool(b.right, state, elem)
    if isinstance(b, Or):
        return eval_bool(b.left, state, elem) or eval_bool(b.right, state, elem)
    if isinstance(b, Not):
        return not eval_bool(b.operand, state, elem)
    raise EvalError(f"not a boolean expression: {b!r}")


def eval_predicate(pred: BoolExpr, elem: Scalar) -> bool:
    """Prefix predicates see only the element."""
    return eval_bool(pred, (), elem)
