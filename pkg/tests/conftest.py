"""Shared generators and independent oracles for the test suite.

All randomness is seeded explicitly so every test run is reproducible.
Generators draw small rationals so exact arithmetic stays fast.
"""

import random
from fractions import Fraction

from hktlab.forms import Form
from hktlab.quaternionic import Metric, quaternion_group_average
from hktlab.scalars import ComplexRational, Polynomial, RationalFunction


def rng_for(name, seed=0):
    return random.Random(f"{name}:{seed}")


def rand_fraction(rng, max_num=4, max_den=4, nonzero=False):
    while True:
        value = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if value or not nonzero:
            return value


def rand_point(rng, num_vars):
    """Grid point with coordinates in [-2, 2], denominator at most 4."""
    coords = []
    for _ in range(num_vars):
        den = rng.randint(1, 4)
        coords.append(Fraction(rng.randint(-2 * den, 2 * den), den))
    return tuple(coords)


def rand_polynomial(rng, num_vars, max_degree=2, terms=4, real=True):
    data = {}
    for _ in range(terms):
        exps = [0] * num_vars
        degree = rng.randint(0, max_degree)
        for _ in range(degree):
            exps[rng.randrange(num_vars)] += 1
        re = rand_fraction(rng)
        im = Fraction(0) if real else rand_fraction(rng)
        key = tuple(exps)
        if key in data:
            old = data[key]
            data[key] = (old[0] + re, old[1] + im)
        else:
            data[key] = (re, im)
    return Polynomial(data, num_vars)


def rand_scalar_field(rng, num_vars, max_degree=2, terms=4, real=True, rational=False):
    num = rand_polynomial(rng, num_vars, max_degree, terms, real=real)
    if not rational:
        return RationalFunction.from_polynomial(num)
    while True:
        den = rand_polynomial(rng, num_vars, max_degree=1, terms=2, real=real)
        if not den.is_zero():
            return RationalFunction(num, den)


def rand_symmetric_metric(rng, num_vars, max_degree=2, terms=2):
    """Random symmetric matrix of real polynomial entries (not definite)."""
    rows = [[None] * num_vars for _ in range(num_vars)]
    for a in range(num_vars):
        for b in range(a, num_vars):
            entry = RationalFunction.from_polynomial(
                rand_polynomial(rng, num_vars, max_degree, terms, real=True)
            )
            rows[a][b] = entry
            rows[b][a] = entry
    return Metric(rows)


def rand_qh_metric(rng, H, max_degree=2, terms=2):
    """Random exactly quaternionic Hermitian metric, via group averaging."""
    return quaternion_group_average(
        rand_symmetric_metric(rng, 4 * H.n, max_degree, terms), H
    )


def rand_form(rng, num_vars, degree, components=3, max_degree=2, real=False):
    data = {}
    for _ in range(components):
        indices = tuple(sorted(rng.sample(range(num_vars), degree)))
        coeff = RationalFunction.from_polynomial(
            rand_polynomial(rng, num_vars, max_degree, terms=2, real=real)
        )
        data[indices] = data[indices] + coeff if indices in data else coeff
    return Form(
        {k: v for k, v in data.items() if not v.is_zero()}, num_vars, degree
    )


# -- independent oracles -----------------------------------------------------


def quat_mul(p, q):
    """Hamilton product of quaternions given as (w, x, y, z) tuples."""
    w1, x1, y1, z1 = p
    w2, x2, y2, z2 = q
    return (
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    )


def fd_exterior_derivative(form, indices, point, step=1e-4):
    """Central finite-difference value of (d form)(e_b0, ..., e_bk) at a point.

    Valid because basis vector fields are constant, so the bracket terms
    of the exterior derivative vanish.
    """
    total = 0.0 + 0.0j
    floats = [float(c) for c in point]
    for i, b in enumerate(indices):
        rest = indices[:i] + indices[i + 1 :]
        coeff = form.components.get(tuple(rest))
        if coeff is None:
            continue
        up = list(floats)
        down = list(floats)
        up[b] += step
        down[b] -= step
        derivative = (coeff.eval_float(up) - coeff.eval_float(down)) / (2 * step)
        total += derivative if i % 2 == 0 else -derivative
    return total
