"""Belief expression language: lexer, parser, evaluator and formatter.

Operators, from the loosest to the tightest binding::

    +  -    union, difference
    |  %    comultiplication (OR), codivision
    *  /    multiplication (AND), division
    !       negation (prefix)

Operands are opinion literals ``(b,d,u,a)``, Beta literals
``beta(r,s,a)``, probability vector literals ``pv(e,u,a)``, variables
and the ``deduce(wx,wyx,wynx)`` and ``abduce(wx,wxy,wxny,a_y)`` calls.
A program may start with ``let name = expr;`` bindings.
"""

import re
import types
import logging
import dataclasses
from typing import Union, Optional, NamedTuple
from collections.abc import Mapping, Iterable

from .enums import EOperator, ETokenKind
from .utils import format_number
from .errors import (
    Span,
    LexError,
    Position,
    ParseError,
    BeliefError,
    UnboundVariableError,
)
from .beta import AugmentedBeta, beta_to_opinion
from .opinion import Opinion, negate, from_pv
from .operators import (
    NO_LIMITS,
    LimitParams,
    add,
    divide,
    codivide,
    multiply,
    subtract,
    comultiply,
)
from .conditional import ConditionalPair, abduce, deduce

__all__ = [
    "Token",
    "Node",
    "OpinionLit",
    "BetaLit",
    "PvLit",
    "Var",
    "Unary",
    "Binary",
    "Call",
    "Let",
    "make_env",
    "tokenize",
    "parse",
    "evaluate",
    "format",
    "format_opinion",
]

logger = logging.getLogger(__name__)

IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
    |(?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
    |(?P<name>[A-Za-z_][A-Za-z0-9_]*)
    |(?P<symbol>[(),+\-*/|%!=;])
    """,
    re.VERBOSE,
)

_SYMBOLS = {
    kind.value: kind
    for kind in ETokenKind
    if kind not in (ETokenKind.NUMBER, ETokenKind.IDENT, ETokenKind.LET)
    and len(kind.value) == 1
}

CALL_ARITY = {"deduce": 3, "abduce": 3}
SCALAR_CALLS = frozenset({"abduce"})


class Token(NamedTuple):
    """Lexical token."""

    kind: ETokenKind
    lexeme: str
    position: Position

    @property
    def end(self) -> Position:
        line, column = self.position
        return Position(line, column + len(self.lexeme))

    def describe(self) -> str:
        if self.kind is ETokenKind.END:
            return self.kind.value
        return repr(self.lexeme)


def tokenize(text: str) -> list[Token]:
    """Split *text* into tokens (maximal munch).

    :raises LexError: at the first character that starts no token
    """
    tokens = []
    pos = 0
    line, column = 1, 1
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise LexError(
                f"unexpected character {text[pos]!r}", Position(line, column)
            )
        lexeme = match.group()
        group = match.lastgroup
        position = Position(line, column)
        if group == "number":
            tokens.append(Token(ETokenKind.NUMBER, lexeme, position))
        elif group == "name":
            kind = ETokenKind.LET if lexeme == "let" else ETokenKind.IDENT
            tokens.append(Token(kind, lexeme, position))
        elif group == "symbol":
            tokens.append(Token(_SYMBOLS[lexeme], lexeme, position))

        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            column = len(lexeme) - lexeme.rfind("\n")
        else:
            column += len(lexeme)
        pos = match.end()

    tokens.append(Token(ETokenKind.END, "", Position(line, column)))
    return tokens


# --- AST ---------------------------------------------------------------------
def _span_field():
    return dataclasses.field(default=None, compare=False, repr=False)


class Node:
    """Base class of the expression nodes.

    Nodes compare structurally; the source span is ignored.
    """

    span: Optional[Span]


@dataclasses.dataclass(frozen=True)
class OpinionLit(Node):
    b: float
    d: float
    u: float
    a: float
    span: Optional[Span] = _span_field()


@dataclasses.dataclass(frozen=True)
class BetaLit(Node):
    r: float
    s: float
    a: float
    span: Optional[Span] = _span_field()


@dataclasses.dataclass(frozen=True)
class PvLit(Node):
    e: float
    u: float
    a: float
    span: Optional[Span] = _span_field()


@dataclasses.dataclass(frozen=True)
class Var(Node):
    name: str
    span: Optional[Span] = _span_field()


@dataclasses.dataclass(frozen=True)
class Unary(Node):
    op: EOperator
    operand: Node
    span: Optional[Span] = _span_field()


@dataclasses.dataclass(frozen=True)
class Binary(Node):
    op: EOperator
    lhs: Node
    rhs: Node
    span: Optional[Span] = _span_field()


@dataclasses.dataclass(frozen=True)
class Call(Node):
    name: str
    args: tuple[Node, ...]
    scalar: Optional[float] = None
    span: Optional[Span] = _span_field()


@dataclasses.dataclass(frozen=True)
class Let(Node):
    name: str
    value: Node
    body: Node
    span: Optional[Span] = _span_field()


# --- parser ------------------------------------------------------------------
_ADDITIVE = {ETokenKind.PLUS: EOperator.ADD, ETokenKind.MINUS: EOperator.SUB}
_DISJUNCTIVE = {
    ETokenKind.BAR: EOperator.COMULT,
    ETokenKind.PERCENT: EOperator.CODIV,
}
_CONJUNCTIVE = {
    ETokenKind.STAR: EOperator.MULT,
    ETokenKind.SLASH: EOperator.DIV,
}
_OPERAND_START = (ETokenKind.LPAREN, ETokenKind.BANG, ETokenKind.IDENT)


class _Parser:
    """Recursive descent parser."""

    def __init__(self, tokens: Iterable[Token]):
        self._tokens = list(tokens)
        self._index = 0

    @property
    def current(self) -> Token:
        return self._tokens[self._index]

    def _peek(self, offset: int = 1) -> Token:
        index = min(self._index + offset, len(self._tokens) - 1)
        return self._tokens[index]

    def _advance(self) -> Token:
        token = self.current
        if token.kind is not ETokenKind.END:
            self._index += 1
        return token

    def _accept(self, kind: ETokenKind) -> Optional[Token]:
        if self.current.kind is kind:
            return self._advance()
        return None

    def _fail(self, expected: Iterable[ETokenKind], message=None):
        token = self.current
        expected = sorted(kind.value for kind in expected)
        if message is None:
            message = (
                f"expected {' or '.join(repr(e) for e in expected)}, "
                f"found {token.describe()}"
            )
        raise ParseError(message, token.position, expected)

    def _expect(self, kind: ETokenKind) -> Token:
        token = self._accept(kind)
        if token is None:
            self._fail([kind])
        return token

    def parse_program(self) -> Node:
        bindings = []
        while self.current.kind is ETokenKind.LET:
            start = self._advance()
            name = self._expect(ETokenKind.IDENT)
            self._expect(ETokenKind.EQUALS)
            value = self.parse_expr()
            self._expect(ETokenKind.SEMICOLON)
            bindings.append((start, name.lexeme, value))
        body = self.parse_expr()
        if self.current.kind is not ETokenKind.END:
            self._fail(
                [ETokenKind.END, *_ADDITIVE, *_DISJUNCTIVE, *_CONJUNCTIVE]
            )
        for start, name, value in reversed(bindings):
            span = Span(start.position, body.span.end)
            body = Let(name, value, body, span=span)
        return body

    def _binary(self, operand, operators) -> Node:
        lhs = operand()
        while self.current.kind in operators:
            op = operators[self._advance().kind]
            rhs = operand()
            lhs = Binary(op, lhs, rhs, span=Span(lhs.span.start, rhs.span.end))
        return lhs

    def parse_expr(self) -> Node:
        return self._binary(self.parse_term, _ADDITIVE)

    def parse_term(self) -> Node:
        return self._binary(self.parse_factor, _DISJUNCTIVE)

    def parse_factor(self) -> Node:
        return self._binary(self.parse_unary, _CONJUNCTIVE)

    def parse_unary(self) -> Node:
        if self.current.kind is ETokenKind.BANG:
            start = self._advance()
            operand = self.parse_unary()
            span = Span(start.position, operand.span.end)
            return Unary(EOperator.NOT, operand, span=span)
        return self.parse_atom()

    def parse_atom(self) -> Node:
        token = self.current
        if token.kind is ETokenKind.LPAREN:
            if self._peek().kind is ETokenKind.NUMBER:
                return self._literal(OpinionLit, "opinion", token)
            self._advance()
            expr = self.parse_expr()
            self._expect(ETokenKind.RPAREN)
            return expr
        if token.kind is ETokenKind.IDENT:
            if self._peek().kind is ETokenKind.LPAREN:
                if token.lexeme == "beta":
                    self._advance()
                    return self._literal(BetaLit, "beta", token)
                if token.lexeme == "pv":
                    self._advance()
                    return self._literal(PvLit, "pv", token)
                if token.lexeme in CALL_ARITY:
                    return self._call()
            self._advance()
            return Var(token.lexeme, span=Span(token.position, token.end))
        self._fail(_OPERAND_START)

    def _number(self) -> float:
        return float(self._expect(ETokenKind.NUMBER).lexeme)

    def _literal(self, cls, name: str, start: Token) -> Node:
        self._expect(ETokenKind.LPAREN)
        values = [self._number()]
        while self._accept(ETokenKind.COMMA):
            values.append(self._number())
        if self.current.kind is not ETokenKind.RPAREN:
            self._fail([ETokenKind.COMMA, ETokenKind.RPAREN])
        arity = len(dataclasses.fields(cls)) - 1
        if len(values) != arity:
            self._fail(
                [ETokenKind.RPAREN],
                f"{name} literal needs {arity} components, "
                f"found {len(values)}",
            )
        end = self._advance()
        return cls(*values, span=Span(start.position, end.end))

    def _call(self) -> Node:
        start = self._advance()
        name = start.lexeme
        self._expect(ETokenKind.LPAREN)
        args = [self.parse_expr()]
        scalar = None
        while self._accept(ETokenKind.COMMA):
            if name in SCALAR_CALLS and len(args) == CALL_ARITY[name]:
                scalar = self._number()
                break
            args.append(self.parse_expr())
        arity = CALL_ARITY[name] + (name in SCALAR_CALLS)
        count = len(args) + (scalar is not None)
        if count != arity or self.current.kind is not ETokenKind.RPAREN:
            self._fail(
                [ETokenKind.RPAREN],
                f"{name} expects {arity} arguments, found {count}",
            )
        end = self._advance()
        return Call(
            name, tuple(args), scalar, span=Span(start.position, end.end)
        )


def parse(tokens: Union[str, Iterable[Token]]) -> Node:
    """Parse a token stream (or a source text) into an expression tree.

    :raises ParseError: with the set of expected tokens and the position
    """
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    return _Parser(tokens).parse_program()


# --- evaluation --------------------------------------------------------------
def make_env(bindings: Mapping[str, Opinion]) -> Mapping[str, Opinion]:
    """Return a read-only evaluation environment."""
    for name, value in bindings.items():
        if not IDENTIFIER_RE.fullmatch(name):
            raise ValueError(f"invalid identifier: {name!r}")
        if not isinstance(value, Opinion):
            raise TypeError(f"invalid value for {name!r}: {value!r}")
    return types.MappingProxyType(dict(bindings))


_BINARY_OPERATORS = {
    EOperator.ADD: lambda x, y, lp: add(x, y),  # noqa: ARG005
    EOperator.SUB: lambda x, y, lp: subtract(x, y),  # noqa: ARG005
    EOperator.MULT: multiply,
    EOperator.DIV: divide,
    EOperator.COMULT: comultiply,
    EOperator.CODIV: codivide,
}


def _eval_node(node: Node, env: Mapping, lp: LimitParams) -> Opinion:
    if isinstance(node, OpinionLit):
        return Opinion(node.b, node.d, node.u, node.a)
    elif isinstance(node, BetaLit):
        return beta_to_opinion(AugmentedBeta(node.r, node.s, node.a))
    elif isinstance(node, PvLit):
        return from_pv((node.e, node.u, node.a))
    elif isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise UnboundVariableError(
                f"unbound variable {node.name!r}"
            ) from None
    elif isinstance(node, Unary):
        return negate(_evaluate(node.operand, env, lp))
    elif isinstance(node, Binary):
        lhs = _evaluate(node.lhs, env, lp)
        rhs = _evaluate(node.rhs, env, lp)
        return _BINARY_OPERATORS[node.op](lhs, rhs, lp)
    elif isinstance(node, Call):
        wx, w1, w2 = (_evaluate(arg, env, lp) for arg in node.args)
        if node.name == "deduce":
            return deduce(wx, ConditionalPair(w1, w2), lp)
        return abduce(wx, w1, w2, node.scalar, lp)
    elif isinstance(node, Let):
        value = _evaluate(node.value, env, lp)
        logger.debug("let %s = %r", node.name, value)
        return _evaluate(node.body, {**env, node.name: value}, lp)
    raise TypeError(f"unexpected expression node: {node!r}")


def _evaluate(node: Node, env: Mapping, lp: LimitParams) -> Opinion:
    try:
        return _eval_node(node, env, lp)
    except BeliefError as exc:
        if exc.span is None:
            exc.span = node.span
        raise


def evaluate(
    expr: Node,
    env: Optional[Mapping[str, Opinion]] = None,
    lp: LimitParams = NO_LIMITS,
) -> Opinion:
    """Evaluate an expression tree.

    Errors raised while evaluating a node carry the node source span.
    """
    return _evaluate(expr, dict(env) if env else {}, lp)


# --- formatting --------------------------------------------------------------
_ATOM_PRECEDENCE = 5


def _precedence(node: Node) -> int:
    if isinstance(node, (Binary, Unary)):
        return node.op.precedence
    return _ATOM_PRECEDENCE


def _literal_number(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def _format_node(node: Node) -> str:
    if isinstance(node, (OpinionLit, BetaLit, PvLit)):
        values = dataclasses.astuple(node)[:-1]
        text = ",".join(_literal_number(v) for v in values)
        prefix = {BetaLit: "beta", PvLit: "pv"}.get(type(node), "")
        return f"{prefix}({text})"
    elif isinstance(node, Var):
        return node.name
    elif isinstance(node, Unary):
        operand = _format_node(node.operand)
        if _precedence(node.operand) < node.op.precedence:
            operand = f"({operand})"
        return f"{node.op.value}{operand}"
    elif isinstance(node, Binary):
        prec = node.op.precedence
        lhs = _format_node(node.lhs)
        if _precedence(node.lhs) < prec:
            lhs = f"({lhs})"
        rhs = _format_node(node.rhs)
        if _precedence(node.rhs) <= prec:
            rhs = f"({rhs})"
        return f"{lhs}{node.op.value}{rhs}"
    elif isinstance(node, Call):
        args = [_format_node(arg) for arg in node.args]
        if node.scalar is not None:
            args.append(_literal_number(node.scalar))
        return f"{node.name}({','.join(args)})"
    elif isinstance(node, Let):
        return f"let {node.name}={_format_node(node.value)};" + _format_node(
            node.body
        )
    raise TypeError(f"unexpected expression node: {node!r}")


def format_opinion(w: Opinion) -> str:
    """Canonical literal of an opinion (12 significant digits)."""
    return "(" + ",".join(format_number(v) for v in w.astuple()) + ")"


def format(obj: Union[Node, Opinion]) -> str:  # noqa: A001
    """Return the canonical text of an expression tree or an opinion.

    >>> format(parse("a * (b + c)"))
    'a*(b+c)'
    """
    if isinstance(obj, Opinion):
        return format_opinion(obj)
    return _format_node(obj)
