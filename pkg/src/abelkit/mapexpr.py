"""Parser for one-variable rational map expressions.

Grammar (whitespace ignored, one variable named x):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := 'x' | integer | '(' expr ')'

The result is reduced to lowest terms and must pass the tangency and
canonical-form checks of MapSpec, so e.g. "x*(1-x)" parses to a map equal
to the built-in A while "x^2" is rejected.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZeroPolynomial, MapExprSyntaxError
from .maps import MapSpec
from .polys import PolyQ


class _RatFunc:
    """Unnormalized rational function used only during parsing."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyQ, den: PolyQ = PolyQ((1,))):
        if not den:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        self.num = num
        self.den = den

    def __add__(self, other: "_RatFunc") -> "_RatFunc":
        return _RatFunc(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __sub__(self, other: "_RatFunc") -> "_RatFunc":
        return _RatFunc(self.num * other.den - other.num * self.den,
                        self.den * other.den)

    def __mul__(self, other: "_RatFunc") -> "_RatFunc":
        return _RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "_RatFunc") -> "_RatFunc":
        if not other.num:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        return _RatFunc(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "_RatFunc":
        return _RatFunc(-self.num, self.den)

    def pow(self, e: int) -> "_RatFunc":
        num, den = PolyQ((1,)), PolyQ((1,))
        for _ in range(e):
            num = num * self.num
            den = den * self.den
        return _RatFunc(num, den)


_TOKEN_CHARS = set("+-*/^()x")


def _tokenize(text: str) -> list:
    tokens: list = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
            continue
        if ch in _TOKEN_CHARS:
            tokens.append(ch)
            i += 1
            continue
        raise MapExprSyntaxError(f"unexpected character {ch!r} at position {i}")
    return tokens


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok) -> None:
        got = self.take()
        if got != tok:
            raise MapExprSyntaxError(f"expected {tok!r}, found {got!r}")

    def parse(self) -> _RatFunc:
        value = self.expr()
        if self.peek() is not None:
            raise MapExprSyntaxError(f"unexpected trailing token {self.peek()!r}")
        return value

    def expr(self) -> _RatFunc:
        negate = False
        if self.peek() == "-":
            self.take()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> _RatFunc:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> _RatFunc:
        value = self.base()
        if self.peek() == "^":
            self.take()
            e = self.take()
            if not isinstance(e, int) or e < 0:
                raise MapExprSyntaxError("exponent must be a non-negative integer")
            value = value.pow(e)
        return value

    def base(self) -> _RatFunc:
        tok = self.take()
        if tok == "x":
            return _RatFunc(PolyQ((0, 1)))
        if isinstance(tok, int):
            return _RatFunc(PolyQ((Fraction(tok),)))
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise MapExprSyntaxError(f"unexpected token {tok!r}")


def parse_map_expr(text: str, domain_sup=None) -> MapSpec:
    """Parse expression text into a validated MapSpec.

    Parsed maps default to domain (0, inf); escape checking during
    iteration still rejects any orbit that leaves (0, domain_sup) or makes
    the denominator change sign.
    """
    if not text or not text.strip():
        raise MapExprSyntaxError("empty expression")
    rf = _Parser(_tokenize(text)).parse()
    return MapSpec(text.strip(), rf.num, rf.den, domain_sup=domain_sup)
