"""Exact scalar fields on a chart: sparse polynomials and rational functions.

Coefficients are complex rationals stored as pairs of ``Fraction``; all
arithmetic is exact.  Monomials are ordered graded-lexicographically, which
fixes canonical forms for equality testing.  Values are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from ._kernels import (
    add_terms,
    diff_terms,
    eval_terms,
    eval_terms_float,
    mul_terms,
    neg_terms,
    scale_terms,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


class PoleError(ZeroDivisionError):
    """Evaluation hit a zero denominator at the requested point."""

    def __init__(self, point):
        self.point = tuple(point)
        super().__init__(f"denominator vanishes at point {format_point(self.point)}")


class ComplexRational(NamedTuple):
    """Exact complex scalar: a pair of rationals (re, im)."""

    re: Fraction
    im: Fraction

    def __add__(self, other):
        o = as_complex_rational(other)
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        o = as_complex_rational(other)
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_complex_rational(other) + (-self)

    def __mul__(self, other):
        o = as_complex_rational(other)
        return ComplexRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_complex_rational(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("division by zero complex rational")
        return ComplexRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def conjugate(self):
        return ComplexRational(self.re, -self.im)

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __complex__(self):
        return complex(self.re, self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


CZERO = ComplexRational(_F0, _F0)
CONE = ComplexRational(_F1, _F0)
IMAG_UNIT = ComplexRational(_F0, _F1)

ScalarLike = Union[int, Fraction, complex, ComplexRational, "Polynomial", "RationalFunction"]


def as_complex_rational(value) -> ComplexRational:
    """Coerce an int/Fraction/pair/complex-with-integral-parts to ComplexRational."""
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, tuple) and len(value) == 2:
        return ComplexRational(Fraction(value[0]), Fraction(value[1]))
    if isinstance(value, (int, Fraction)):
        return ComplexRational(Fraction(value), _F0)
    if isinstance(value, complex):
        return ComplexRational(Fraction(value.real), Fraction(value.imag))
    raise TypeError(f"cannot interpret {value!r} as an exact complex rational")


def format_point(point) -> str:
    return "(" + ", ".join(str(c) for c in point) + ")"


def _grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    """Sparse multivariate polynomial with complex-rational coefficients.

    ``terms`` maps exponent tuples of length ``num_vars`` to ``(re, im)``
    Fraction pairs; zero coefficients are never stored.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, terms, num_vars):
        clean = {}
        for exps, coeff in terms.items():
            c = coeff if isinstance(coeff, tuple) else as_complex_rational(coeff)
            re, im = Fraction(c[0]), Fraction(c[1])
            if not re and not im:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise ValueError(
                    f"exponent vector {exps} has length {len(exps)}, expected {num_vars}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            clean[exps] = (re, im)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, terms, num_vars):
        obj = object.__new__(cls)
        object.__setattr__(obj, "num_vars", num_vars)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, num_vars):
        return cls._raw({}, num_vars)

    @classmethod
    def one(cls, num_vars):
        return cls.constant(1, num_vars)

    @classmethod
    def constant(cls, value, num_vars):
        c = as_complex_rational(value)
        if c.is_zero():
            return cls.zero(num_vars)
        return cls._raw({(0,) * num_vars: (c.re, c.im)}, num_vars)

    @classmethod
    def variable(cls, index, num_vars):
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for {num_vars} variables")
        exps = tuple(1 if i == index else 0 for i in range(num_vars))
        return cls._raw({exps: (_F1, _F0)}, num_vars)

    # -- arithmetic ----------------------------------------------------

    def _check_compat(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"mixing polynomials in {self.num_vars} and {other.num_vars} variables"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.num_vars)
        self._check_compat(other)
        return Polynomial._raw(add_terms(self.terms, other.terms), self.num_vars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(neg_terms(self.terms), self.num_vars)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.num_vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_complex_rational(other)
            return Polynomial._raw(scale_terms(self.terms, c.re, c.im), self.num_vars)
        self._check_compat(other)
        return Polynomial._raw(mul_terms(self.terms, other.terms), self.num_vars)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.one(self.num_vars)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational, complex)):
            other = Polynomial.constant(other, self.num_vars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    __hash__ = None

    # -- calculus and queries -------------------------------------------

    def diff(self, var):
        if not 0 <= var < self.num_vars:
            raise ValueError(f"variable index {var} out of range for {self.num_vars} variables")
        return Polynomial._raw(diff_terms(self.terms, var), self.num_vars)

    def eval_exact(self, point) -> ComplexRational:
        point = tuple(Fraction(c) for c in point)
        if len(point) != self.num_vars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.num_vars}")
        re, im = eval_terms(self.terms, point)
        return ComplexRational(re, im)

    def eval_float(self, point) -> complex:
        point = tuple(float(c) for c in point)
        if len(point) != self.num_vars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.num_vars}")
        return eval_terms_float(self.terms, point)

    def conjugate(self):
        return Polynomial._raw(
            {e: (re, -im) for e, (re, im) in self.terms.items()}, self.num_vars
        )

    def is_zero(self):
        return not self.terms

    def is_real(self):
        return all(not im for _, im in self.terms.values())

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex leading monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        re, im = self.terms[exps]
        return exps, ComplexRational(re, im)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            c = ComplexRational(*self.terms[exps])
            factors = [
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(exps) if k
            ]
            if not factors:
                parts.append(f"({c})" if not c.is_real() else str(c))
                continue
            mono = "*".join(factors)
            if c == CONE:
                parts.append(mono)
            elif c == -CONE:
                parts.append(f"-{mono}")
            elif c.is_real():
                parts.append(f"{c.re}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Polynomial({self}, num_vars={self.num_vars})"


def _common_monomial(terms_a, terms_b, num_vars):
    """Largest monomial dividing every term of both maps; None if trivial."""
    if not terms_a or not terms_b:
        return None
    mins = [None] * num_vars
    for terms in (terms_a, terms_b):
        for exps in terms:
            for i, e in enumerate(exps):
                if mins[i] is None or e < mins[i]:
                    mins[i] = e
    if not any(mins):
        return None
    return tuple(mins)


class RationalFunction:
    """Quotient of two polynomials; denominator never the zero polynomial.

    Canonical form: the denominator's graded-lex leading coefficient is 1
    and any common monomial factor of numerator and denominator is
    cancelled.  Equality is decided by cross-multiplication, so full gcd
    reduction is unnecessary.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if num.num_vars != den.num_vars:
            raise ValueError("numerator and denominator disagree on variable count")
        if den.is_zero():
            raise ZeroDivisionError("zero polynomial in denominator")
        if num.is_zero():
            den = Polynomial.one(num.num_vars)
        else:
            common = _common_monomial(num.terms, den.terms, num.num_vars)
            if common:
                num = Polynomial._raw(
                    {
                        tuple(e - m for e, m in zip(exps, common)): c
                        for exps, c in num.terms.items()
                    },
                    num.num_vars,
                )
                den = Polynomial._raw(
                    {
                        tuple(e - m for e, m in zip(exps, common)): c
                        for exps, c in den.terms.items()
                    },
                    den.num_vars,
                )
            _, lead = den.leading_term()
            if lead != CONE:
                inv = CONE / lead
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_polynomial(cls, p: Polynomial):
        return cls(p, Polynomial.one(p.num_vars))

    @classmethod
    def zero(cls, num_vars):
        return cls.from_polynomial(Polynomial.zero(num_vars))

    @classmethod
    def one(cls, num_vars):
        return cls.from_polynomial(Polynomial.one(num_vars))

    @classmethod
    def constant(cls, value, num_vars):
        return cls.from_polynomial(Polynomial.constant(value, num_vars))

    @classmethod
    def variable(cls, index, num_vars):
        return cls.from_polynomial(Polynomial.variable(index, num_vars))

    @property
    def num_vars(self):
        return self.num.num_vars

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.from_polynomial(other)
        return RationalFunction.constant(other, self.num_vars)

    def _den_is_one(self):
        den = self.den
        return len(den.terms) == 1 and den.terms.get((0,) * den.num_vars) == (_F1, _F0)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if self._den_is_one() and o._den_is_one():
            return RationalFunction(self.num + o.num, self.den)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(
            self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational, complex)):
            return RationalFunction(self.num * other, self.den)
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise ValueError("rational function powers must be integers")
        if exponent < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den ** (-exponent), self.num ** (-exponent))
        return RationalFunction(self.num**exponent, self.den**exponent)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational, complex, Polynomial)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    # -- calculus and queries -------------------------------------------

    def diff(self, var):
        if self._den_is_one():
            return RationalFunction(self.num.diff(var), self.den)
        return RationalFunction(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def eval_exact(self, point) -> ComplexRational:
        d = self.den.eval_exact(point)
        if d.is_zero():
            raise PoleError(point)
        return self.num.eval_exact(point) / d

    def eval_float(self, point) -> complex:
        d = self.den.eval_float(point)
        if d == 0:
            raise PoleError(point)
        return self.num.eval_float(point) / d

    def conjugate(self):
        return RationalFunction(self.num.conjugate(), self.den.conjugate())

    def real_part(self):
        half = Fraction(1, 2)
        return (self + self.conjugate()) * half

    def imag_part(self):
        half_over_i = ComplexRational(_F0, Fraction(-1, 2))
        return (self - self.conjugate()) * half_over_i

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self._den_is_one()

    def is_real(self):
        return self == self.conjugate()

    def __str__(self):
        if self._den_is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"
