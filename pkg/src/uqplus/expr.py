"""Tokenizer, recursive-descent parser and evaluator for algebra expressions.

Grammar, loosest binding first::

    expr    := signed (('+' | '-') signed)*
    signed  := '-' signed | product
    product := power (('*' | '/') power)*
    power   := atom ('^' ['-'] INT)?
    atom    := INT | 'q' | GENERATOR | NAME | '(' expr ')'

Multiplication is always explicit.  ``/`` is only allowed with a scalar on
the right.  Negative exponents are allowed on scalars and on ``K`` letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .algebra import AlgElement, RewriteSystem, render_element

__all__ = [
    "Token",
    "ExprError",
    "LexError",
    "ParseError",
    "tokenize",
    "parse",
    "elaborate",
    "evaluate",
    "render",
    "Add", "Sub", "Neg", "Mul", "Div", "Pow", "Scalar", "QSymbol", "Gen", "Name",
]


class ExprError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class LexError(ExprError):
    pass


class ParseError(ExprError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # int, q, gen, name, op, lparen, rparen, end
    text: str
    pos: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*'?)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
""", re.VERBOSE)

_GEN_RE = re.compile(r"[EFK][1-9][0-9]*")


def tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        s = m.group()
        if kind == "word":
            if s == "q":
                kind = "q"
            elif _GEN_RE.fullmatch(s):
                kind = "gen"
            else:
                kind = "name"
        if kind != "ws":
            out.append(Token(kind, s, pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# -- syntax tree ----------------------------------------------------------

@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: int


@dataclass(frozen=True)
class Scalar:
    value: int


@dataclass(frozen=True)
class QSymbol:
    pass


@dataclass(frozen=True)
class Gen:
    kind: str
    index: int
    pos: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, what):
        t = self.tok
        if t.kind != kind:
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {what}, found {found}", t.pos)
        return self.take()

    def is_op(self, *ops):
        return self.tok.kind == "op" and self.tok.text in ops

    def expr(self):
        node = self.signed()
        while self.is_op("+", "-"):
            op = self.take().text
            rhs = self.signed()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def signed(self):
        if self.is_op("-"):
            self.take()
            return Neg(self.signed())
        return self.product()

    def product(self):
        node = self.power()
        while self.is_op("*", "/"):
            op = self.take().text
            rhs = self.power()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def power(self):
        base = self.atom()
        if self.is_op("^"):
            caret = self.take()
            neg = False
            if self.is_op("-"):
                self.take()
                neg = True
            t = self.expect("int", "integer exponent")
            e = int(t.text)
            return Pow(base, -e if neg else e, caret.pos)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.take()
            return Scalar(int(t.text))
        if t.kind == "q":
            self.take()
            return QSymbol()
        if t.kind == "gen":
            self.take()
            return Gen(t.text[0], int(t.text[1:]), t.pos)
        if t.kind == "name":
            self.take()
            return Name(t.text, t.pos)
        if t.kind == "lparen":
            self.take()
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected an operand, found {found}", t.pos)


def parse(tokens) -> object:
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    p = _Parser(tokens)
    node = p.expr()
    if p.tok.kind != "end":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return node


# -- evaluation -------------------------------------------------------------

class _Value:
    """Either a scalar of the field or an algebra element."""

    __slots__ = ("scalar", "elem")

    def __init__(self, scalar=None, elem=None):
        self.scalar = scalar
        self.elem = elem

    def as_elem(self, rs: RewriteSystem) -> AlgElement:
        if self.elem is not None:
            return self.elem
        return AlgElement.scalar(self.scalar)


def _eval(node, rs: RewriteSystem, names: Mapping):
    fld = rs.field
    if isinstance(node, Scalar):
        return _Value(scalar=fld.coerce(node.value))
    if isinstance(node, QSymbol):
        return _Value(scalar=fld.q(1))
    if isinstance(node, Name) or (isinstance(node, Gen) and node.index > rs.rank):
        label = node.name if isinstance(node, Name) else f"{node.kind}{node.index}"
        for key in (label, label.replace("'", "p"), label[:-1] + "'" if label.endswith("p") else None):
            if key is not None and key in names:
                return _Value(elem=names[key])
        raise ExprError(f"unknown name {label!r}", node.pos)
    if isinstance(node, Gen):
        g = {"E": rs.E, "F": rs.F, "K": rs.K}[node.kind](node.index)
        return _Value(elem=g)
    if isinstance(node, Neg):
        v = _eval(node.arg, rs, names)
        return _Value(scalar=-v.scalar) if v.elem is None else _Value(elem=-v.elem)
    if isinstance(node, (Add, Sub)):
        a = _eval(node.left, rs, names)
        b = _eval(node.right, rs, names)
        if a.elem is None and b.elem is None:
            return _Value(scalar=a.scalar + b.scalar if isinstance(node, Add) else a.scalar - b.scalar)
        x, y = a.as_elem(rs), b.as_elem(rs)
        return _Value(elem=x + y if isinstance(node, Add) else x - y)
    if isinstance(node, Mul):
        a = _eval(node.left, rs, names)
        b = _eval(node.right, rs, names)
        if a.elem is None and b.elem is None:
            return _Value(scalar=a.scalar * b.scalar)
        if a.elem is None:
            return _Value(elem=a.scalar * b.elem)
        if b.elem is None:
            return _Value(elem=a.elem * b.scalar)
        return _Value(elem=rs.multiply(a.elem, b.elem))
    if isinstance(node, Div):
        a = _eval(node.left, rs, names)
        b = _eval(node.right, rs, names)
        if b.elem is not None:
            raise ExprError("division by a non-scalar", _first_pos(node.right))
        if not b.scalar:
            raise ExprError("division by zero", _first_pos(node.right))
        if a.elem is None:
            return _Value(scalar=a.scalar / b.scalar)
        return _Value(elem=a.elem / b.scalar)
    if isinstance(node, Pow):
        if isinstance(node.base, Gen) and node.base.kind == "K" and node.base.index <= rs.rank:
            g = rs.K(node.base.index) if node.exp >= 0 else rs.Kinv(node.base.index)
            return _Value(elem=rs.power(g, abs(node.exp)))
        v = _eval(node.base, rs, names)
        if v.elem is None:
            if node.exp < 0 and not v.scalar:
                raise ExprError("negative power of zero", node.pos)
            return _Value(scalar=v.scalar ** node.exp)
        if node.exp < 0:
            raise ExprError("negative exponents are only allowed on scalars and K letters", node.pos)
        return _Value(elem=rs.power(v.elem, node.exp))
    raise TypeError(f"unknown node {node!r}")


def _first_pos(node) -> int:
    for attr in ("pos",):
        if hasattr(node, attr):
            return getattr(node, attr)
    for attr in ("left", "arg", "base"):
        if hasattr(node, attr):
            return _first_pos(getattr(node, attr))
    return 0


def elaborate(rs: RewriteSystem, tree, names: Mapping | None = None) -> AlgElement:
    """Evaluate a parsed expression to a normal-form element."""
    v = _eval(tree, rs, names or {})
    return rs.normal_form(v.as_elem(rs))


def evaluate(rs: RewriteSystem, text: str, names: Mapping | None = None) -> AlgElement:
    return elaborate(rs, parse(text), names)


def scalar_value(rs: RewriteSystem, text: str):
    """Evaluate a pure scalar expression such as ``(q^2-1)/(q+q^-1)``."""
    v = _eval(parse(text), rs, {})
    if v.elem is not None:
        raise ExprError("expected a scalar expression", 0)
    return v.scalar


def render(x: AlgElement) -> str:
    return render_element(x)
