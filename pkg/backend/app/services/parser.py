"""
Reader and printer for ``.gsp`` program files.

    (program array-max
      (state (m -inf))
      (step (m (max elem m)))
      (output m))

The program name after ``program`` is optional; a bare list of the three
sections is accepted too.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..models.dsl import (
    MAX_DEPTH,
    And,
    ArithOp,
    BinOp,
    BoolExpr,
    Cmp,
    CmpOp,
    Const,
    ELEM,
    Expr,
    If,
    Not,
    Or,
    Program,
    StateField,
    depth,
    render_bool,
    render_expr,
    uses_input,
    walk,
)
from ..models.errors import DslSyntaxError, EvalError, ProgramValidationError
from ..models.scalar import EOF, Scalar, parse_scalar

logger = logging.getLogger(__name__)

ARITH = {op.value: op for op in ArithOp}
COMPARE = {op.value: op for op in CmpOp}
KEYWORDS = {"program", "state", "step", "output", "if", "and", "or", "not", "elem"}


@dataclass
class Token:
    text: str
    line: int
    column: int


@dataclass
class SList:
    items: list
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch in "()":
            tokens.append(Token(ch, line, col))
            i += 1
            col += 1
            continue
        start, start_col = i, col
        while i < len(text) and not text[i].isspace() and text[i] not in "();":
            i += 1
            col += 1
        tokens.append(Token(text[start:i], line, start_col))
    return tokens


# program, step and binding lists wrap the deepest allowed expression
MAX_NESTING = MAX_DEPTH + 3


def read_sexpr(text: str):
    """Read exactly one s-expression; atoms stay Tokens, lists become SLists."""
    tokens = tokenize(text)
    if not tokens:
        raise DslSyntaxError("unexpected end of input", 1, 1)
    pos = 0

    def read(level: int = 1):
        nonlocal pos
        if pos >= len(tokens):
            last = tokens[-1]
            raise DslSyntaxError("unexpected end of input, missing ')'", last.line, last.column + 1)
        tok = tokens[pos]
        pos += 1
        if tok.text == "(":
            if level > MAX_NESTING:
                raise DslSyntaxError(f"nesting deeper than {MAX_NESTING} levels", tok.line, tok.column)
            items = []
            while pos < len(tokens) and tokens[pos].text != ")":
                items.append(read(level + 1))
            if pos >= len(tokens):
                raise DslSyntaxError("unclosed '('", tok.line, tok.column)
            pos += 1
            return SList(items, tok.line, tok.column)
        if tok.text == ")":
            raise DslSyntaxError("unexpected ')'", tok.line, tok.column)
        return tok

    node = read()
    if pos != len(tokens):
        extra = tokens[pos]
        raise DslSyntaxError(f"unexpected trailing input '{extra.text}'", extra.line, extra.column)
    return node


def _where(node) -> Tuple[int, int]:
    return node.line, node.column


def _fail(message: str, node):
    raise DslSyntaxError(message, *_where(node))


def _head(node) -> Optional[str]:
    if isinstance(node, SList) and node.items and isinstance(node.items[0], Token):
        return node.items[0].text
    return None


def _scalar_token(tok: Token) -> Optional[Scalar]:
    try:
        return parse_scalar(tok.text)
    except ValueError:
        return None
    except EvalError:
        raise DslSyntaxError(f"integer literal out of range: {tok.text}", tok.line, tok.column)


class _ExprReader:
    """Turns s-expressions into Expr / BoolExpr trees, resolving field names."""

    def __init__(self, fields: Dict[str, int], unknown: List[str]):
        self.fields = fields
        self.unknown = unknown

    def expr(self, node) -> Expr:
        if isinstance(node, Token):
            if node.text == "elem":
                return ELEM
            value = _scalar_token(node)
            if value is not None:
                return Const(value)
            if node.text in KEYWORDS or node.text in ARITH or node.text in COMPARE:
                _fail(f"unexpected keyword '{node.text}'", node)
            if node.text not in self.fields:
                self.unknown.append(node.text)
                # resolved later into a validation error
                return StateField(len(self.fields) + len(self.unknown) - 1)
            return StateField(self.fields[node.text])
        head = _head(node)
        args = node.items[1:]
        if head in ARITH:
            if len(args) != 2:
                _fail(f"'{head}' takes two operands", node)
            return BinOp(ARITH[head], self.expr(args[0]), self.expr(args[1]))
        if head == "if":
            if len(args) != 3:
                _fail("'if' takes a condition and two branches", node)
            return If(self.bexpr(args[0]), self.expr(args[1]), self.expr(args[2]))
        _fail(f"expected an expression, found '{head or '('}'", node)

    def bexpr(self, node) -> BoolExpr:
        head = _head(node)
        if head is None:
            _fail("expected a boolean expression", node)
        args = node.items[1:]
        if head in COMPARE:
            if len(args) != 2:
                _fail(f"'{head}' takes two operands", node)
            return Cmp(COMPARE[head], self.expr(args[0]), self.expr(args[1]))
        if head in ("and", "or"):
            if len(args) != 2:
                _fail(f"'{head}' takes two operands", node)
            cls = And if head == "and" else Or
            return cls(self.bexpr(args[0]), self.bexpr(args[1]))
        if head == "not":
            if len(args) != 1:
                _fail("'not' takes one operand", node)
            return Not(self.bexpr(args[0]))
        _fail(f"expected a comparison, found '{head}'", node)


def _section(node, name: str) -> list:
    if _head(node) != name:
        _fail(f"expected '({name} ...)' section", node)
    items = node.items[1:]
    if not items:
        _fail(f"'{name}' section is empty", node)
    return items


def _pair(node, what: str) -> Tuple[Token, object]:
    if not isinstance(node, SList) or len(node.items) != 2 or not isinstance(node.items[0], Token):
        _fail(f"expected ({what})", node)
    return node.items[0], node.items[1]


def parse_program(text: str, name: Optional[str] = None) -> Program:
    """Parse and validate a program; raises DslSyntaxError or ProgramValidationError."""
    root = read_sexpr(text)
    if not isinstance(root, SList):
        _fail("expected '(program ...)'", root)
    items = list(root.items)
    program_name = name or "program"
    if items and isinstance(items[0], Token):
        if items[0].text != "program":
            _fail("expected 'program'", items[0])
        items = items[1:]
        if items and isinstance(items[0], Token):
            program_name = name or items[0].text
            items = items[1:]
    if len(items) != 3:
        _fail("a program has exactly three sections: state, step, output", root)

    state_node, step_node, output_node = items
    fields: Dict[str, int] = {}
    init: List[Scalar] = []
    for binding in _section(state_node, "state"):
        ident, value = _pair(binding, "ident scalar")
        scalar = _scalar_token(value) if isinstance(value, Token) else None
        if scalar is None:
            _fail("state initializer must be a scalar", value)
        if ident.text in fields:
            _fail(f"duplicate state field '{ident.text}'", ident)
        if _scalar_token(ident) is not None or ident.text in KEYWORDS:
            _fail(f"'{ident.text}' cannot name a state field", ident)
        fields[ident.text] = len(init)
        init.append(scalar)

    unknown: List[str] = []
    reader = _ExprReader(fields, unknown)
    assigned: Dict[int, Expr] = {}
    for assign in _section(step_node, "step"):
        ident, body = _pair(assign, "ident expr")
        if ident.text not in fields:
            _fail(f"step assigns unknown field '{ident.text}'", ident)
        if fields[ident.text] in assigned:
            _fail(f"field '{ident.text}' assigned twice", ident)
        assigned[fields[ident.text]] = reader.expr(body)

    out_items = _section(output_node, "output")
    if len(out_items) != 1:
        _fail("'output' takes exactly one expression", output_node)
    output = reader.expr(out_items[0])

    violations = [f"state index out of range (unknown state field '{u}')" for u in unknown]
    missing = [f for f, i in fields.items() if i not in assigned]
    if missing:
        violations.append(f"step does not assign {', '.join(missing)}")
    if violations:
        raise ProgramValidationError(violations)

    program = Program(
        name=program_name,
        fields=tuple(fields),
        init=tuple(init),
        step=tuple(assigned[i] for i in range(len(init))),
        output=output,
    )
    violations = validate_program(program)
    if violations:
        raise ProgramValidationError(violations)
    logger.debug(f"Parsed program {program.name} with arity {program.arity}")
    return program


def _eof_misuse(node) -> bool:
    for n in walk(node):
        if isinstance(n, Cmp) and n.op.ordered:
            operands = (n.left, n.right)
        elif isinstance(n, BinOp):
            operands = (n.left, n.right)
        else:
            continue
        if any(isinstance(o, Const) and o.value is EOF for o in operands):
            return True
    return False


def validate_program(p: Program) -> List[str]:
    violations = []
    if p.arity <= 0:
        violations.append("arity must be positive")
    if len(p.step) != p.arity:
        violations.append("init and step lengths differ")
    if p.fields and len(p.fields) != p.arity:
        violations.append("field names do not match arity")
    for expr in list(p.step) + [p.output]:
        if any(isinstance(n, StateField) and not 0 <= n.index < p.arity for n in walk(expr)):
            violations.append("state index out of range")
            break
    if uses_input(p.output):
        violations.append("output uses current input")
    if any(depth(e) > MAX_DEPTH for e in list(p.step) + [p.output]):
        violations.append(f"expression depth exceeds {MAX_DEPTH}")
    if any(_eof_misuse(e) for e in list(p.step) + [p.output]):
        violations.append("Eof used with an ordered comparison or arithmetic")
    return violations


def parse_bool_expr(text: str, fields: Tuple[str, ...] = ()) -> BoolExpr:
    unknown: List[str] = []
    pred = _ExprReader({f: i for i, f in enumerate(fields)}, unknown).bexpr(read_sexpr(text))
    if unknown:
        raise ProgramValidationError([f"unknown identifier '{u}'" for u in unknown])
    return pred


def pretty_print(p: Program) -> str:
    lines = [f"(program {p.name}"]
    lines.append("  (state " + " ".join(f"({f} {v})" for f, v in zip(p.fields, p.init)) + ")")
    steps = "\n         ".join(f"({f} {render_expr(e, p.fields)})" for f, e in zip(p.fields, p.step))
    lines.append(f"  (step {steps})")
    lines.append(f"  (output {render_expr(p.output, p.fields)}))")
    return "\n".join(lines) + "\n"


def parse_input_array(text: str) -> Tuple[Scalar, ...]:
    """Whitespace separated scalar tokens; ``-inf``, ``+inf`` and ``eof`` are accepted."""
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for token in line.split():
            try:
                values.append(parse_scalar(token))
            except ValueError:
                raise DslSyntaxError(f"invalid input token '{token}'", lineno, line.index(token) + 1)
    return tuple(values)


__all__ = [
    "parse_program",
    "parse_bool_expr",
    "parse_input_array",
    "pretty_print",
    "validate_program",
    "render_expr",
    "render_bool",
]
