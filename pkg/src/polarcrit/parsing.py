"""Text grammar for polynomials.

Variables are identifiers, operators are ``+ - * ^``, literals are integers
or ``a/b`` rationals, and multiplication is always explicit (``2*x``, never
``2x``).  Whitespace is insignificant.  ``format`` on a polynomial emits the
canonical form (terms descending in grevlex), and parsing that string back
reproduces the polynomial exactly.
"""

from __future__ import annotations

import re

from .ring import CoefficientError, MultiPoly, Ring

__all__ = ["ParseError", "parse_poly"]


class ParseError(ValueError):
    """Syntax or lookup failure, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()]))")


def _tokenize(text: str):
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        self.advance()

    def parse(self) -> MultiPoly:
        poly = self.expression()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", pos)
        return poly

    def expression(self) -> MultiPoly:
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            self.advance()
            negate = value == "-"
        total = self.term()
        if negate:
            total = -total
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                total = total - rhs if value == "-" else total + rhs
            else:
                return total

    def term(self) -> MultiPoly:
        total = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                total = total * self.factor()
            else:
                return total

    def factor(self) -> MultiPoly:
        base = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, pos = self.advance()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return base ** int(value)
        return base

    def base(self) -> MultiPoly:
        kind, value, pos = self.advance()
        if kind == "int":
            num = int(value)
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/":
                self.advance()
                dk, dv, dpos = self.advance()
                if dk != "int":
                    raise ParseError("denominator must be an integer", dpos)
                try:
                    return self.ring.constant(self.ring.field.ratio(num, int(dv)))
                except CoefficientError as exc:
                    raise ParseError(str(exc), dpos) from None
            return self.ring.from_int(num)
        if kind == "name":
            try:
                idx = self.ring.index(value)
            except KeyError:
                raise ParseError(f"unknown variable {value!r}", pos) from None
            return self.ring.variable(idx)
        if kind == "op" and value == "(":
            inner = self.expression()
            self.expect_op(")")
            return inner
        raise ParseError(f"expected a variable, literal, or '('", pos)


def parse_poly(text: str, ring: Ring) -> MultiPoly:
    """Parse ``text`` into a canonical polynomial over ``ring``."""
    return _Parser(text, ring).parse()
