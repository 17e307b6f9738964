"""Recursive-descent parser for polynomial and rational expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := primary ('^' INTEGER)?
    primary:= INTEGER | IDENT | '(' expr ')'

Rational literals are written ``p/q``.  Errors carry the 0-based offset of
the offending token.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, format_poly
from .ratfunc import RatFunc


class ParseError(ValueError):
    """Syntax or name error with the character offset where it occurred."""

    def __init__(self, message, position, text=""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    @property
    def column(self):
        return self.position + 1


@dataclass
class Token:
    kind: str  # "int", "ident", "op", "end"
    value: str
    pos: int


def tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append(Token("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text, ring, rational):
        self.text = text
        self.ring = ring
        self.rational = rational
        self.tokens = tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        t = self.tokens[self.k]
        self.k += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok.pos, self.text)

    def wrap(self, value):
        if self.rational:
            return RatFunc.from_poly(value) if isinstance(value, Poly) else value
        return value

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"unexpected token {tok.value!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok.value == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "*/":
                self.take()
                rhs = self.unary()
                if tok.value == "*":
                    value = value * rhs
                else:
                    value = self.divide(value, rhs, tok)
            else:
                return value

    def divide(self, lhs, rhs, tok):
        if rhs.is_zero():
            raise self.error("division by zero", tok)
        if self.rational:
            return lhs / rhs
        if not rhs.is_constant():
            raise self.error("division by a non-constant polynomial", tok)
        return lhs.scale(1 / rhs.constant_value())

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            value = self.unary()
            return -value if tok.value == "-" else value
        return self.power()

    def power(self):
        base = self.primary()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.take()
            exp_tok = self.peek()
            if exp_tok.kind == "op" and exp_tok.value == "-":
                raise self.error("negative exponent", exp_tok)
            if exp_tok.kind != "int":
                raise self.error("exponent must be a nonnegative integer literal", exp_tok)
            self.take()
            return base ** int(exp_tok.value)
        return base

    def primary(self):
        tok = self.take()
        if tok.kind == "int":
            return self.wrap(Poly.const(self.ring, Fraction(int(tok.value))))
        if tok.kind == "ident":
            if not self.ring.has_symbol(tok.value):
                raise ParseError(f"unknown identifier {tok.value!r}", tok.pos, self.text)
            return self.wrap(Poly.symbol(self.ring, tok.value))
        if tok.kind == "op" and tok.value == "(":
            value = self.expr()
            close = self.peek()
            if not (close.kind == "op" and close.value == ")"):
                raise self.error("expected ')'", close)
            self.take()
            return value
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos, self.text)
        raise ParseError(f"unexpected token {tok.value!r}", tok.pos, self.text)


def poly_parse(text, ring):
    """Parse a polynomial; division is only allowed by nonzero constants."""
    return _Parser(text, ring, rational=False).parse()


def ratfunc_parse(text, ring):
    """Parse a rational function expression."""
    return _Parser(text, ring, rational=True).parse()


def poly_print(p):
    return format_poly(p)
