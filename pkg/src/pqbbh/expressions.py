"""Tiny arithmetic expression language over the single variable t.

Grammar (EBNF):

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-"? power
    power  := atom ("^" factor)?
    atom   := NUMBER | "t" | "(" expr ")" | IDENT "(" expr ")"
    IDENT  := "exp" | "log" | "sin" | "cos" | "sqrt" | "abs"

"^" is right associative and binds tighter than unary minus; NUMBER is a
decimal literal with an optional exponent.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

from .pq_core import DomainError

FUNCTIONS: dict[str, Callable[[float], float]] = {
    "exp": math.exp,
    "log": math.log,
    "sin": math.sin,
    "cos": math.cos,
    "sqrt": math.sqrt,
    "abs": abs,
}


class ExpressionError(ValueError):
    """Base for problems with user-supplied expressions."""


class ExpressionSyntaxError(ExpressionError):
    """Malformed expression text; carries the byte offset and expected tokens."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        suffix = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at offset {offset}{suffix}")


class ExpressionDomainError(DomainError):
    """Evaluation left the reals; names the offending node and the value of t."""


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class Negate:
    operand: "ExprAst"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "ExprAst"


ExprAst = Union[Number, Variable, Negate, Binary, Call]

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str, expected: tuple[str, ...]) -> None:
        kind, text, offset = self.peek()
        if kind == "op" and text == op:
            self.take()
            return
        raise ExpressionSyntaxError(f"unexpected {text or 'end of input'!r}", offset, expected)

    def expr(self) -> ExprAst:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                node = Binary(text, node, self.term())
            else:
                return node

    def term(self) -> ExprAst:
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.take()
                node = Binary(text, node, self.factor())
            else:
                return node

    def factor(self) -> ExprAst:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return Negate(self.power())
        return self.power()

    def power(self) -> ExprAst:
        node = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            return Binary("^", node, self.factor())
        return node

    def atom(self) -> ExprAst:
        kind, text, offset = self.take()
        if kind == "num":
            return Number(float(text))
        if kind == "ident":
            if text == "t":
                return Variable()
            if text in FUNCTIONS:
                self.expect_op("(", ("(",))
                arg = self.expr()
                self.expect_op(")", (")",))
                return Call(text, arg)
            raise ExpressionSyntaxError(f"unknown identifier {text!r}", offset)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")", (")",))
            return node
        raise ExpressionSyntaxError(
            f"unexpected {text or 'end of input'!r}",
            offset,
            ("NUMBER", "t", "(", "function name"),
        )


def parse_expression(text: str) -> ExprAst:
    """Parse expression text into an AST.

    Raises:
        ExpressionSyntaxError: on malformed input, with the byte offset and
            the tokens that would have been accepted there.
    """
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0, ("NUMBER", "t", "(", "function name"))
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    kind, trailing, offset = parser.peek()
    if kind != "end":
        raise ExpressionSyntaxError(f"unexpected trailing {trailing!r}", offset)
    return node


def eval_expression(ast: ExprAst, t: float) -> float:
    """Evaluate the AST at t, raising where the arithmetic leaves the reals."""
    if not math.isfinite(t):
        raise ExpressionDomainError(f"t must be finite, got {t!r}")
    return _eval(ast, t)


def _fail(node: ExprAst, t: float, why: str) -> "ExpressionDomainError":
    return ExpressionDomainError(f"{why} in '{format_expression(node)}' at t={t!r}")


def _eval(node: ExprAst, t: float) -> float:
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Variable):
        return float(t)
    if isinstance(node, Negate):
        return -_eval(node.operand, t)
    if isinstance(node, Call):
        arg = _eval(node.arg, t)
        try:
            value = float(FUNCTIONS[node.func](arg))
        except (ValueError, OverflowError):
            raise _fail(node, t, f"{node.func} of {arg!r} is undefined") from None
        if not math.isfinite(value):
            raise _fail(node, t, "non-finite result")
        return value
    lhs = _eval(node.left, t)
    rhs = _eval(node.right, t)
    if node.op == "+":
        value = lhs + rhs
    elif node.op == "-":
        value = lhs - rhs
    elif node.op == "*":
        value = lhs * rhs
    elif node.op == "/":
        if rhs == 0.0:
            raise _fail(node, t, "division by zero")
        value = lhs / rhs
    else:
        try:
            value = math.pow(lhs, rhs)
        except (ValueError, OverflowError):
            raise _fail(node, t, f"{lhs!r} ^ {rhs!r} is undefined") from None
    if not math.isfinite(value):
        raise _fail(node, t, "non-finite result")
    return value


# Printer precedence levels; a child is parenthesized when its level is too
# low for the slot it appears in, which makes format -> parse structurally
# lossless.
_LEVEL_ADD = 1
_LEVEL_MUL = 2
_LEVEL_NEG = 3
_LEVEL_POW = 4
_LEVEL_ATOM = 5


def _level(node: ExprAst) -> int:
    if isinstance(node, Binary):
        if node.op in "+-":
            return _LEVEL_ADD
        if node.op in "*/":
            return _LEVEL_MUL
        return _LEVEL_POW
    if isinstance(node, Negate):
        return _LEVEL_NEG
    if isinstance(node, Number) and node.value < 0:
        # the grammar cannot produce negative literals; print them like a negation
        return _LEVEL_NEG
    return _LEVEL_ATOM


def _render(node: ExprAst, min_level: int) -> str:
    level = _level(node)
    if isinstance(node, Number):
        text = repr(node.value)
    elif isinstance(node, Variable):
        text = "t"
    elif isinstance(node, Negate):
        text = "-" + _render(node.operand, _LEVEL_POW)
    elif isinstance(node, Call):
        text = f"{node.func}({_render(node.arg, _LEVEL_ADD)})"
    else:
        if node.op == "^":
            # right associative: only atoms may stand unparenthesized on the left
            text = _render(node.left, _LEVEL_ATOM) + "^" + _render(node.right, _LEVEL_NEG)
        else:
            text = (
                _render(node.left, level)
                + node.op
                + _render(node.right, level + 1)
            )
    if level < min_level:
        return f"({text})"
    return text


def format_expression(ast: ExprAst) -> str:
    """Render the AST back to text; re-parsing yields a structurally equal tree."""
    return _render(ast, _LEVEL_ADD)


def as_function(ast: ExprAst) -> Callable[[float], float]:
    """Wrap an AST as a plain callable of t."""
    return lambda t: eval_expression(ast, t)
