"""Recursive-descent parser for curve expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' int)?
    atom   := number | 'i' | 'z' | 'zb' | 'conj' '(' expr ')' | '(' expr ')' | '-' factor

Numbers are decimal with an optional exponent and an optional trailing
``i``. There is no implicit multiplication. Offsets in errors are UTF-8
byte offsets into the input.
"""

import re
from dataclasses import dataclass
from typing import Optional

from models.errors import ParseError
from ratfun.expr import (
    MAX_DEPTH, MAX_EXPONENT, BinOp, Const, Pow, RatExpr, Var, conjugate, depth,
)

TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)

IDENTIFIERS = ("z", "zb", "i", "conj")
ATOM_EXPECTED = "a number, 'i', 'z', 'zb', 'conj(', '(' or '-'"


@dataclass(frozen=True)
class Token:
    kind: str  # number, ident, op, end
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(_byte_offset(text, pos), ATOM_EXPECTED, text)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(Token("end", "", len(text.encode("utf-8"))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _number(token: Token) -> complex:
    text = token.text
    if text.endswith("i"):
        return complex(0, float(text[:-1]))
    return complex(float(text))


def _fold(op: str, left: RatExpr, right: RatExpr) -> RatExpr:
    if isinstance(left, Const) and isinstance(right, Const) and op in ("add", "sub", "mul"):
        a, b = left.value, right.value
        return Const(a + b if op == "add" else a - b if op == "sub" else a * b)
    return BinOp(op, left, right)


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.nesting = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, expected: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(token.offset, expected, self.text)

    def eat(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            raise self.error(repr(text) if text else kind)
        self.pos += 1
        return token

    def _enter(self):
        self.nesting += 1
        if self.nesting > MAX_DEPTH:
            raise self.error(f"an expression nested at most {MAX_DEPTH} deep")

    def _limit(self, node: RatExpr, token: Token) -> RatExpr:
        if depth(node) > MAX_DEPTH:
            raise self.error(f"an expression tree at most {MAX_DEPTH} deep", token)
        return node

    def parse(self) -> RatExpr:
        node = self.expr()
        if self.current.kind != "end":
            raise self.error("an operator or end of input")
        return node

    def expr(self) -> RatExpr:
        self._enter()
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            token = self.eat("op")
            op = "add" if token.text == "+" else "sub"
            node = self._limit(_fold(op, node, self.term()), token)
        self.nesting -= 1
        return node

    def term(self) -> RatExpr:
        node = self.factor()
        while self.current.kind == "op" and self.current.text in "*/":
            token = self.eat("op")
            op = "mul" if token.text == "*" else "div"
            node = self._limit(_fold(op, node, self.factor()), token)
        return node

    def factor(self) -> RatExpr:
        node = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            token = self.eat("op")
            node = self._limit(Pow(node, self.exponent()), token)
        return node

    def exponent(self) -> int:
        sign = 1
        if self.current.kind == "op" and self.current.text in "+-":
            sign = -1 if self.eat("op").text == "-" else 1
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise self.error("an integer exponent")
        self.pos += 1
        value = sign * int(token.text)
        if abs(value) > MAX_EXPONENT:
            raise self.error(f"an exponent of magnitude at most {MAX_EXPONENT}", token)
        return value

    def atom(self) -> RatExpr:
        token = self.current
        if token.kind == "number":
            self.pos += 1
            return Const(_number(token))
        if token.kind == "ident":
            if token.text not in IDENTIFIERS:
                raise self.error(ATOM_EXPECTED)
            self.pos += 1
            if token.text == "i":
                return Const(1j)
            if token.text == "conj":
                self.eat("op", "(")
                inner = self.expr()
                self.eat("op", ")")
                return conjugate(inner)
            return Var(token.text)
        if token.kind == "op" and token.text == "(":
            self.pos += 1
            node = self.expr()
            self.eat("op", ")")
            return node
        if token.kind == "op" and token.text == "-":
            self.pos += 1
            self._enter()
            operand = self.factor()
            self.nesting -= 1
            if isinstance(operand, Const):
                return Const(-operand.value)
            return self._limit(BinOp("sub", Const(0), operand), token)
        raise self.error(ATOM_EXPECTED)


def parse_expr(text: str) -> RatExpr:
    return Parser(text).parse()
