"""Expression grammar: literals, precedence, errors with positions."""

from fractions import Fraction

import pytest

from hktlab.parsing import ParseError, parse_polynomial, parse_scalar
from hktlab.scalars import ComplexRational, RationalFunction


def test_polynomial_with_rational_literal():
    f = parse_scalar("x0^2 + 1/2", 4)
    assert f.is_polynomial()
    assert f.num.terms == {
        (2, 0, 0, 0): (Fraction(1), Fraction(0)),
        (0, 0, 0, 0): (Fraction(1, 2), Fraction(0)),
    }


def test_zero_expression():
    f = parse_scalar("0", 4)
    assert f.is_zero()
    assert f.den == RationalFunction.one(4).den


def test_hopf_denominator():
    f = parse_scalar("1/(x0^2+x1^2+x2^2+x3^2)", 4)
    assert f.num.terms == {(0, 0, 0, 0): (Fraction(1), Fraction(0))}
    assert len(f.den.terms) == 4


def test_whitespace_insignificant():
    assert parse_scalar(" x0 ^ 2+ 1 / 2 ", 4) == parse_scalar("x0^2+1/2", 4)


def test_precedence_and_unary_minus():
    assert parse_scalar("-x0^2", 2) == -(parse_scalar("x0", 2) ** 2)
    assert parse_scalar("2*x0+3*x1", 2) == parse_scalar("x0", 2) * 2 + parse_scalar("x1", 2) * 3
    assert parse_scalar("2^3", 1) == 8
    assert parse_scalar("-2/4", 1) == Fraction(-1, 2)
    assert parse_scalar("(x0+1)^2", 1) == parse_scalar("x0^2 + 2*x0 + 1", 1)
    assert parse_scalar("--x0", 1) == parse_scalar("x0", 1)


def test_division_chains_left_associative():
    assert parse_scalar("8/2/2", 1) == 2


def test_variable_index_out_of_range():
    with pytest.raises(ParseError) as err:
        parse_scalar("x4 + 1", 4)
    assert "x4" in str(err.value)
    assert err.value.position == 0


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_scalar("x0 + * 2", 4)
    assert err.value.position == 5


def test_unbalanced_parenthesis():
    with pytest.raises(ParseError):
        parse_scalar("(x0 + 1", 4)


def test_trailing_garbage():
    with pytest.raises(ParseError) as err:
        parse_scalar("x0 + 1)", 4)
    assert err.value.position == 6


def test_negative_exponent_rejected():
    with pytest.raises(ParseError):
        parse_scalar("x0^-2", 4)


def test_chained_exponent_rejected():
    with pytest.raises(ParseError):
        parse_scalar("x0^2^3", 4)


def test_division_by_zero_polynomial():
    with pytest.raises(ParseError) as err:
        parse_scalar("1/(x0 - x0)", 4)
    assert "zero" in str(err.value)


def test_empty_expression():
    with pytest.raises(ParseError):
        parse_scalar("", 4)


def test_parse_polynomial_rejects_true_quotients():
    assert parse_polynomial("x0^2/4", 2) is not None
    with pytest.raises(ParseError):
        parse_polynomial("1/(1+x0)", 2)


def test_rational_arithmetic_in_expression():
    f = parse_scalar("(x0 + 1/3)*(x0 - 1/3)", 1)
    assert f == parse_scalar("x0^2 - 1/9", 1)
