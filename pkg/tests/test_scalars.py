"""Exact scalar arithmetic: polynomials, rational functions, evaluation."""

from fractions import Fraction

import pytest

from conftest import rand_point, rand_scalar_field, rng_for
from hktlab.scalars import (
    ComplexRational,
    PoleError,
    Polynomial,
    RationalFunction,
)


def test_zero_polynomial_stores_nothing():
    p = Polynomial({(0, 0, 0, 0): (Fraction(0), Fraction(0))}, 4)
    assert p.is_zero()
    assert p.terms == {}


def test_polynomial_rejects_bad_exponents():
    with pytest.raises(ValueError):
        Polynomial({(1, 0): (Fraction(1), Fraction(0))}, 4)
    with pytest.raises(ValueError):
        Polynomial({(-1, 0, 0, 0): (Fraction(1), Fraction(0))}, 4)


def test_power_rule_derivative():
    x0 = Polynomial.variable(0, 4)
    x1 = Polynomial.variable(1, 4)
    f = x0 * x0 * x1
    assert f.diff(0) == x0 * x1 * 2
    assert (x0 * x0).diff(3).is_zero()


def test_quotient_rule_derivative():
    four = 4
    x0 = RationalFunction.variable(0, four)
    x1 = RationalFunction.variable(1, four)
    f = 1 / (x0 * x0 + x1 * x1)
    df = f.diff(0)
    expected = -(x0 * 2) / ((x0 * x0 + x1 * x1) ** 2)
    assert df == expected


def test_second_derivatives_commute():
    rng = rng_for("dd-commute")
    for _ in range(25):
        f = rand_scalar_field(rng, 4, max_degree=3, terms=5, rational=rng.random() < 0.4)
        a, b = rng.randrange(4), rng.randrange(4)
        assert f.diff(a).diff(b) == f.diff(b).diff(a)


def test_ring_axioms_randomized():
    rng = rng_for("ring-axioms")
    for _ in range(15):
        f = rand_scalar_field(rng, 3, rational=True)
        g = rand_scalar_field(rng, 3, rational=True)
        h = rand_scalar_field(rng, 3, rational=True)
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + g == g + f
        assert f * g == g * f


def test_evaluate_is_ring_homomorphism():
    rng = rng_for("eval-hom")
    checked = 0
    while checked < 20:
        f = rand_scalar_field(rng, 3, rational=True)
        g = rand_scalar_field(rng, 3, rational=True)
        h = rand_scalar_field(rng, 3, rational=True)
        point = rand_point(rng, 3)
        try:
            lhs = (f * g + h).eval_exact(point)
            rhs = f.eval_exact(point) * g.eval_exact(point) + h.eval_exact(point)
        except PoleError:
            continue
        assert lhs == rhs
        checked += 1


def test_evaluate_examples():
    f = RationalFunction.variable(0, 4) ** 2 + Fraction(1, 2)
    assert f.eval_exact((1, 0, 0, 0)) == ComplexRational(Fraction(3, 2), Fraction(0))
    inv = 1 / sum(
        (RationalFunction.variable(i, 4) ** 2 for i in range(4)),
        RationalFunction.zero(4),
    )
    assert inv.eval_exact((1, 1, 1, 1)) == ComplexRational(Fraction(1, 4), Fraction(0))
    with pytest.raises(PoleError):
        inv.eval_exact((0, 0, 0, 0))


def test_eval_float_matches_exact():
    rng = rng_for("eval-float")
    for _ in range(10):
        f = rand_scalar_field(rng, 3, rational=True)
        point = rand_point(rng, 3)
        try:
            exact = f.eval_exact(point)
        except PoleError:
            continue
        approx = f.eval_float([float(c) for c in point])
        assert abs(complex(exact) - approx) < 1e-9


def test_equality_by_cross_multiplication():
    x0 = RationalFunction.variable(0, 2)
    x1 = RationalFunction.variable(1, 2)
    # Same function, structurally different representations.
    a = (x0 * x0 - x1 * x1) / (x0 - x1)
    b = (x0 + x1) * (x0 - x1) / (x0 - x1)
    assert a == b
    assert not a == b + 1


def test_denominator_leading_coefficient_normalized():
    x0 = RationalFunction.variable(0, 2)
    f = 1 / (x0 * 3)
    lead_exps, lead = f.den.leading_term()
    assert lead == ComplexRational(Fraction(1), Fraction(0))


def test_common_monomial_cancellation():
    x0 = RationalFunction.variable(0, 2)
    x1 = RationalFunction.variable(1, 2)
    f = (x0 ** 2 * x1) / (x0 * x1)
    assert f.is_polynomial()
    assert f == x0


def test_division_by_zero_function_raises():
    zero = RationalFunction.zero(2)
    with pytest.raises(ZeroDivisionError):
        RationalFunction.one(2) / zero
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Polynomial.one(2), Polynomial.zero(2))


def test_conjugation_and_realness():
    i = ComplexRational(Fraction(0), Fraction(1))
    x0 = RationalFunction.variable(0, 2)
    f = x0 * i + 1
    assert not f.is_real()
    assert f.conjugate() == 1 - x0 * i
    assert (f * f.conjugate()).is_real()
    assert f.real_part() == RationalFunction.one(2)
    assert f.imag_part() == x0


def test_grlex_leading_term():
    # x0^2 beats x0*x1 beats x1^2 beats x0.
    p = Polynomial(
        {
            (2, 0): (Fraction(5), Fraction(0)),
            (1, 1): (Fraction(1), Fraction(0)),
            (1, 0): (Fraction(7), Fraction(0)),
        },
        2,
    )
    exps, coeff = p.leading_term()
    assert exps == (2, 0)
    assert coeff == ComplexRational(Fraction(5), Fraction(0))


def test_complex_rational_arithmetic():
    i = ComplexRational(Fraction(0), Fraction(1))
    one = ComplexRational(Fraction(1), Fraction(0))
    assert i * i == -one
    assert (one + i) * (one - i) == ComplexRational(Fraction(2), Fraction(0))
    assert (one / (one + i)) == ComplexRational(Fraction(1, 2), Fraction(-1, 2))
    assert str(ComplexRational(Fraction(1, 2), Fraction(-3))) == "1/2-3i"


def test_polynomial_power():
    x0 = Polynomial.variable(0, 1)
    p = (x0 + 1) ** 3
    assert p == x0 ** 3 + x0 ** 2 * 3 + x0 * 3 + 1
    assert (x0 ** 0) == Polynomial.one(1)
