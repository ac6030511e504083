"""Recursive-descent parser for the chart expression grammar.

Grammar (whitespace insignificant):

    expr   :=  term (('+' | '-') term)*
    term   :=  unary (('*' | '/') unary)*
    unary  :=  '-' unary | power
    power  :=  atom ('^' UINT)?
    atom   :=  UINT | VAR | '(' expr ')'

Variables are ``x0`` .. ``x{num_vars-1}``; rationals are written with the
division operator (``3/4``); exponents must be non-negative integer
literals.
"""

from __future__ import annotations

from .scalars import Polynomial, RationalFunction


class ParseError(ValueError):
    """Syntax or validation error in an expression, with position."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"at position {position}: {message}")


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def read_uint(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an unsigned integer", start)
        return int(self.text[start : self.pos])


def parse_scalar(text: str, num_vars: int) -> RationalFunction:
    """Parse an expression string into an exact scalar field on the chart."""
    scanner = _Scanner(text)
    value = _parse_expr(scanner, num_vars)
    scanner.skip_ws()
    if scanner.pos != len(text):
        raise ParseError(f"unexpected character {text[scanner.pos]!r}", scanner.pos)
    return value


def _parse_expr(s: _Scanner, num_vars: int) -> RationalFunction:
    value = _parse_term(s, num_vars)
    while True:
        ch = s.peek()
        if ch == "+":
            s.take()
            value = value + _parse_term(s, num_vars)
        elif ch == "-":
            s.take()
            value = value - _parse_term(s, num_vars)
        else:
            return value


def _parse_term(s: _Scanner, num_vars: int) -> RationalFunction:
    value = _parse_unary(s, num_vars)
    while True:
        ch = s.peek()
        if ch == "*":
            s.take()
            value = value * _parse_unary(s, num_vars)
        elif ch == "/":
            pos = s.pos
            s.take()
            divisor = _parse_unary(s, num_vars)
            if divisor.is_zero():
                raise ParseError("division by the zero polynomial", pos)
            value = value / divisor
        else:
            return value


def _parse_unary(s: _Scanner, num_vars: int) -> RationalFunction:
    if s.peek() == "-":
        s.take()
        return -_parse_unary(s, num_vars)
    return _parse_power(s, num_vars)


def _parse_power(s: _Scanner, num_vars: int) -> RationalFunction:
    value = _parse_atom(s, num_vars)
    if s.peek() == "^":
        pos = s.pos
        s.take()
        if s.peek() == "-":
            raise ParseError("exponents must be non-negative integers", s.pos)
        exponent = s.read_uint()
        value = value**exponent
        if s.peek() == "^":
            raise ParseError("chained '^' is ambiguous; parenthesize", s.pos)
        _ = pos
    return value


def _parse_atom(s: _Scanner, num_vars: int) -> RationalFunction:
    ch = s.peek()
    pos = s.pos
    if ch == "(":
        s.take()
        value = _parse_expr(s, num_vars)
        if s.peek() != ")":
            raise ParseError("expected ')'", s.pos)
        s.take()
        return value
    if ch == "x":
        s.take()
        index = s.read_uint()
        if index >= num_vars:
            raise ParseError(
                f"variable x{index} out of range (chart has {num_vars} variables)", pos
            )
        return RationalFunction.variable(index, num_vars)
    if ch.isdigit():
        return RationalFunction.constant(s.read_uint(), num_vars)
    if ch == "":
        raise ParseError("unexpected end of expression", pos)
    raise ParseError(f"unexpected character {ch!r}", pos)


def parse_polynomial(text: str, num_vars: int) -> Polynomial:
    """Parse an expression that must reduce to a polynomial (denominator 1)."""
    value = parse_scalar(text, num_vars)
    if not value.is_polynomial():
        raise ParseError("expression is not a polynomial", 0)
    return value.num
