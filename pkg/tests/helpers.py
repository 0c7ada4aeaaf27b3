"""Shared generators for seeded test cases."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from simplexorder import SimplexPoint


def rand_float_point(rng: random.Random, n: int, u: float = 1.0) -> SimplexPoint:
    """Uniform point of the simplex via normalized exponentials."""
    g = [rng.expovariate(1.0) for _ in range(n + 1)]
    s = math.fsum(g)
    return SimplexPoint(tuple(c * (u / s) for c in g), u)


def rand_rational_point(
    rng: random.Random, n: int, u: Fraction = Fraction(1), hi: int = 999
) -> SimplexPoint:
    """Strictly positive rational point with exact coordinate sum u."""
    g = [rng.randint(1, hi) for _ in range(n + 1)]
    s = sum(g)
    return SimplexPoint(tuple(Fraction(c, s) * u for c in g), u)


def mlr_reweight(rng: random.Random, x: SimplexPoint) -> SimplexPoint:
    """A point dominating ``x`` in likelihood-ratio order.

    Reweighting by a nondecreasing positive vector makes the coordinate
    ratio nondecreasing by construction.
    """
    w = [rng.uniform(0.1, 1.0)]
    for _ in range(x.n):
        w.append(w[-1] + rng.uniform(0.0, 1.0))
    raw = [float(c) * wi for c, wi in zip(x.coords, w)]
    u = float(x.u)
    s = math.fsum(raw)
    return SimplexPoint(tuple(c * (u / s) for c in raw), u)


def mlr_dominating_pair(
    rng: random.Random, n: int, u: float = 1.0
) -> tuple[SimplexPoint, SimplexPoint]:
    """A pair (x, y) with x below y in likelihood-ratio order."""
    x = rand_float_point(rng, n, u)
    return x, mlr_reweight(rng, x)


def mlr_dominating_pair_rational(
    rng: random.Random, n: int, u: Fraction = Fraction(1)
) -> tuple[SimplexPoint, SimplexPoint]:
    x = rand_rational_point(rng, n, u)
    w = [Fraction(rng.randint(1, 50))]
    for _ in range(n):
        w.append(w[-1] + rng.randint(0, 50))
    raw = [c * wi for c, wi in zip(x.coords, w)]
    s = sum(raw)
    y = SimplexPoint(tuple(c * u / s for c in raw), u)
    return x, y


def fosd_dominating_pair(
    rng: random.Random, n: int, u: float = 1.0, moves: int = 3
) -> tuple[SimplexPoint, SimplexPoint]:
    """A pair (x, y) with x below y in FOSD order.

    y is built from x by repeatedly moving mass from a lower index to a
    higher one, which can only grow tail sums.
    """
    x = rand_float_point(rng, n, u)
    coords = list(x.coords)
    for _ in range(moves):
        i = rng.randrange(0, n)
        j = rng.randrange(i + 1, n + 1)
        delta = rng.uniform(0.0, coords[i])
        coords[i] -= delta
        coords[j] += delta
    y = SimplexPoint(tuple(coords), u)
    return x, y


def fosd_dominating_pair_rational(
    rng: random.Random, n: int, u: Fraction = Fraction(1), moves: int = 3
) -> tuple[SimplexPoint, SimplexPoint]:
    x = rand_rational_point(rng, n, u)
    coords = list(x.coords)
    for _ in range(moves):
        i = rng.randrange(0, n)
        j = rng.randrange(i + 1, n + 1)
        delta = coords[i] * Fraction(rng.randint(0, 100), 100)
        coords[i] -= delta
        coords[j] += delta
    y = SimplexPoint(tuple(coords), u)
    return x, y
