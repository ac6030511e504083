"""Deterministic sampling plans for point/vector checks.

Random rationals are drawn coordinate-wise from [-2, 2] with denominator
at most 4, so every evaluation stays exact and small.  The same plan
(seed, count, user points) always produces the same samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

DEFAULT_SEED = 0
DEFAULT_COUNT = 16


def _rng(seed, label):
    return random.Random(f"{seed}:{label}")


def _random_rational(rng):
    den = rng.randint(1, 4)
    num = rng.randint(-2 * den, 2 * den)
    return Fraction(num, den)


@dataclass(frozen=True)
class SamplingPlan:
    seed: int = DEFAULT_SEED
    count: int = DEFAULT_COUNT
    user_points: Tuple[Tuple[Fraction, ...], ...] = ()

    def chart_points(self, num_vars):
        """Deterministic points (origin, unit points), user points, seeded random."""
        points = [tuple(Fraction(0) for _ in range(num_vars))]
        for i in range(num_vars):
            points.append(
                tuple(Fraction(1) if j == i else Fraction(0) for j in range(num_vars))
            )
        for p in self.user_points:
            if len(p) != num_vars:
                raise ValueError(
                    f"sample point {p} has {len(p)} coordinates, expected {num_vars}"
                )
            points.append(tuple(Fraction(c) for c in p))
        rng = _rng(self.seed, "points")
        for _ in range(self.count):
            points.append(tuple(_random_rational(rng) for _ in range(num_vars)))
        return points

    def tangent_vectors(self, num_vars):
        """Deterministic vectors (basis, all-ones) plus seeded random nonzero ones."""
        vectors = []
        for i in range(num_vars):
            vectors.append(
                tuple(Fraction(1) if j == i else Fraction(0) for j in range(num_vars))
            )
        vectors.append(tuple(Fraction(1) for _ in range(num_vars)))
        rng = _rng(self.seed, "vectors")
        produced = 0
        while produced < self.count:
            v = tuple(_random_rational(rng) for _ in range(num_vars))
            if any(v):
                vectors.append(v)
                produced += 1
        return vectors
