"""A small expression language for quantum-plane elements.

Grammar (multiplication is always explicit)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | factor
    factor   := base ("^" nat)?
    base     := "x" | "y" | "q" | "qinv" | rational | "(" expr ")" | "expq" "(" expr ")"
    rational := nat ("/" nat)?
    nat      := digit+

``/`` divides by a nonzero scalar (an expression free of ``x`` and ``y``);
scalars lie in the centre of the algebra, so this is well defined.  A
``nat "/" nat`` pair at the start of an operand is one rational literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .plane import PlaneElement, X, Y, pe_mul, pe_pow, q_exp
from .ring import QINV, Q, RatFun

__all__ = [
    "Node",
    "ParseError",
    "LexError",
    "ExprSyntaxError",
    "ElaborationError",
    "MAX_EXPONENT",
    "tokenize",
    "parse",
    "unparse",
    "elaborate",
]

MAX_EXPONENT = 4096
_MAX_DEPTH = 100
_MAX_TREE_DEPTH = 400
_MAX_DIGITS = 1000

KEYWORDS = ("x", "y", "q", "qinv", "expq")


class ParseError(ValueError):
    """Positioned diagnostic for malformed input."""

    def __init__(self, message: str, position: int, expected: Tuple[str, ...] = ()):
        self.message = message
        self.position = position
        self.expected = tuple(expected)
        text = f"position {position}: {message}"
        if expected:
            text += f" (expected {' or '.join(expected)})"
        super().__init__(text)


class LexError(ParseError):
    pass


class ExprSyntaxError(ParseError):
    pass


class ElaborationError(ParseError):
    """A well-formed expression with no meaning in the algebra."""


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "nat", "op", "end"
    text: str
    pos: int


def tokenize(source: str) -> List[Token]:
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
        elif c.isascii() and c.isdigit():
            j = i
            while j < n and source[j].isascii() and source[j].isdigit():
                j += 1
            if j - i > _MAX_DIGITS:
                raise LexError(f"numeric literal longer than {_MAX_DIGITS} digits", i)
            tokens.append(Token("nat", source[i:j], i))
            i = j
        elif c.isascii() and c.isalpha():
            j = i
            while j < n and source[j].isascii() and source[j].isalnum():
                j += 1
            word = source[i:j]
            if word not in KEYWORDS:
                hint = " (multiplication must be explicit, e.g. x*y)" if set(word) <= {"x", "y", "q"} else ""
                raise LexError(f"unknown identifier {word!r}{hint}", i)
            tokens.append(Token("name", word, i))
            i = j
        elif c in "+-*/^()":
            tokens.append(Token("op", c, i))
            i += 1
        else:
            raise LexError(f"unexpected character {c!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


@dataclass(frozen=True)
class Node:
    """Expression tree node.

    ``kind`` is one of ``x y q qinv num neg add sub mul div pow expq``.
    ``value`` holds the Fraction of a ``num`` leaf or the integer exponent
    of a ``pow`` node.
    """

    kind: str
    children: Tuple["Node", ...] = ()
    value: Optional[object] = None
    pos: int = 0


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0
        self.depth = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("op", "name") and tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            tok = self.peek()
            raise ExprSyntaxError(f"unexpected {_describe(tok)}", tok.pos, (repr(text),))
        return self.advance()

    def _enter(self, pos: int):
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ExprSyntaxError("expression nested too deeply", pos)

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {_describe(tok)}", tok.pos, ("'+'", "'-'", "'*'", "'/'", "end of input"))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            rhs = self.term()
            node = Node("add" if op.text == "+" else "sub", (node, rhs), pos=op.pos)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance()
            # a divisor never absorbs a following "/" as a rational literal: x/2/3 is (x/2)/3
            rhs = self.unary(allow_rational=op.text == "*")
            node = Node("mul" if op.text == "*" else "div", (node, rhs), pos=op.pos)
        return node

    def unary(self, allow_rational: bool = True) -> Node:
        if self.at("-"):
            op = self.advance()
            self._enter(op.pos)
            child = self.unary(allow_rational)
            self.depth -= 1
            return Node("neg", (child,), pos=op.pos)
        return self.factor(allow_rational)

    def factor(self, allow_rational: bool) -> Node:
        node = self.base(allow_rational)
        if self.at("^"):
            caret = self.advance()
            tok = self.peek()
            if tok.kind != "nat":
                raise ExprSyntaxError(
                    "exponent must be a bare nonnegative integer", tok.pos, ("nonnegative integer",)
                )
            self.advance()
            k = int(tok.text)
            if k > MAX_EXPONENT:
                raise ExprSyntaxError(f"exponent {k} exceeds the maximum {MAX_EXPONENT}", tok.pos)
            node = Node("pow", (node,), value=k, pos=caret.pos)
            if self.at("^"):
                raise ExprSyntaxError("'^' is not associative; add parentheses", self.peek().pos)
        return node

    def base(self, allow_rational: bool) -> Node:
        tok = self.peek()
        if tok.kind == "name":
            self.advance()
            if tok.text == "expq":
                self.expect("(")
                self._enter(tok.pos)
                child = self.expr()
                self.depth -= 1
                self.expect(")")
                return Node("expq", (child,), pos=tok.pos)
            return Node(tok.text, pos=tok.pos)
        if tok.kind == "nat":
            self.advance()
            value = Fraction(int(tok.text))
            if allow_rational and self.at("/") and self.peek(1).kind == "nat":
                self.advance()
                den_tok = self.advance()
                den = int(den_tok.text)
                if den == 0:
                    raise ExprSyntaxError("zero denominator in rational literal", den_tok.pos)
                value = Fraction(int(tok.text), den)
            return Node("num", value=value, pos=tok.pos)
        if self.at("("):
            self.advance()
            self._enter(tok.pos)
            node = self.expr()
            self.depth -= 1
            self.expect(")")
            return node
        raise ExprSyntaxError(
            f"unexpected {_describe(tok)}", tok.pos,
            ("'x'", "'y'", "'q'", "'qinv'", "number", "'('", "'expq'"),
        )


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


def _tree_depth(root: Node) -> int:
    deepest = 0
    stack = [(root, 1)]
    while stack:
        node, d = stack.pop()
        deepest = max(deepest, d)
        stack.extend((c, d + 1) for c in node.children)
    return deepest


def parse(source: str) -> Node:
    """Parse ``source`` into a :class:`Node` tree or raise :class:`ParseError`."""
    try:
        tree = _Parser(source).parse()
    except RecursionError:
        raise ExprSyntaxError("expression nested too deeply", 0) from None
    # long operator chains are built iteratively but evaluated recursively
    if _tree_depth(tree) > _MAX_TREE_DEPTH:
        raise ExprSyntaxError("expression nested too deeply", 0)
    return tree


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def unparse(node: Node) -> str:
    """Fully parenthesized-where-needed text that parses back to ``node``."""
    kind = node.kind
    if kind in ("x", "y", "q", "qinv"):
        return kind
    if kind == "num":
        v = Fraction(node.value)
        return str(v.numerator) if v.denominator == 1 else f"({v.numerator}/{v.denominator})"
    if kind == "expq":
        return f"expq({unparse(node.children[0])})"
    if kind == "neg":
        return f"-{_wrap(node.children[0], 3)}"
    if kind == "pow":
        return f"{_wrap(node.children[0], 5)}^{node.value}"
    op = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[kind]
    lhs, rhs = node.children
    prec = _PREC[kind]
    return f"{_wrap(lhs, prec)} {op} {_wrap(rhs, prec + 1)}"


def _wrap(node: Node, min_prec: int) -> str:
    text = unparse(node)
    prec = _PREC.get(node.kind, 5)
    return text if prec >= min_prec else f"({text})"


def elaborate(node: Node, cutoff: int) -> PlaneElement:
    """Evaluate a tree in the quantum plane, truncating at total degree ``cutoff``."""
    kind = node.kind
    if kind == "x":
        return X.truncate(cutoff)
    if kind == "y":
        return Y.truncate(cutoff)
    if kind == "q":
        return PlaneElement.scalar(Q)
    if kind == "qinv":
        return PlaneElement.scalar(QINV)
    if kind == "num":
        return PlaneElement.scalar(Fraction(node.value))
    if kind == "neg":
        return -elaborate(node.children[0], cutoff)
    if kind == "pow":
        base = elaborate(node.children[0], cutoff)
        if base.is_scalar():
            return PlaneElement.scalar(base.constant_term ** node.value)
        if base.constant_term.is_zero() and node.value > cutoff:
            return PlaneElement()
        return pe_pow(base, node.value, cutoff)
    if kind == "expq":
        child = elaborate(node.children[0], cutoff)
        if not child.constant_term.is_zero():
            raise ElaborationError(
                f"expq argument has nonzero constant term {child.constant_term}", node.pos
            )
        return q_exp(child, cutoff)
    lhs = elaborate(node.children[0], cutoff)
    rhs = elaborate(node.children[1], cutoff)
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return pe_mul(lhs, rhs, cutoff)
    if kind == "div":
        if not rhs.is_scalar():
            raise ElaborationError("can only divide by an expression free of x and y", node.pos)
        if rhs.is_zero():
            raise ElaborationError("division by zero", node.pos)
        return lhs / rhs.constant_term
    raise ValueError(f"unknown node kind {kind!r}")
