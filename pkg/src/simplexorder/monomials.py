"""Monomial families behind the exact FOSD dominance probability.

For dimension index ``n``, the family ``H_k(n)`` collects the degree-``n``
monomials ``x_{i_0} x_{i_1} ... x_{i_{n-1}}`` whose index sequence can be
arranged so that the j-th index is at most ``min(j, k)``.  Equivalently, a
degree multiset is admissible iff its sorted index sequence ``s_0 <= s_1 <=
...`` satisfies ``s_j <= min(j, k)``, a ballot-style condition.  The full
family ``H_n(n)`` has Catalan-number size and evaluating its members at a
reference point, each weighted by a multinomial coefficient, yields the
probability that a uniform random point dominates the reference point in
first-order stochastic sense.

Enumeration is cached per ``(k, n)`` and emits monomials in ascending
lexicographic order of their degree vectors.  Exact evaluation is limited
to ``n <= 16``: the family size roughly quadruples per step and n = 16
already holds ~35M monomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .core import DomainError, Scalar, SimplexPoint, SizeLimitError

EXACT_FOSD_MAX_N = 16


@dataclass(frozen=True)
class Monomial:
    """Degrees of ``x_0 .. x_{n-1}`` for a degree-``n`` monomial."""

    degrees: tuple[int, ...]

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)


@dataclass(frozen=True)
class WeightedMonomial:
    """A monomial with its multinomial coefficient ``n! / prod(d_i!)``."""

    monomial: Monomial
    coefficient: int


def catalan_count(n: int) -> int:
    """Size of the full family in dimension index ``n`` (Catalan number)."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return math.comb(2 * n, n) // (n + 1)


def _index_sequences(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing sequences s_0..s_{n-1} with s_j <= min(j, k)."""
    seq = [0] * n

    def rec(j: int, lo: int) -> Iterator[tuple[int, ...]]:
        if j == n:
            yield tuple(seq)
            return
        hi = min(j, k)
        for s in range(lo, hi + 1):
            seq[j] = s
            yield from rec(j + 1, s)

    yield from rec(0, 0)


@lru_cache(maxsize=64)
def enumerate_H(k: int, n: int) -> tuple[WeightedMonomial, ...]:
    """All members of ``H_k(n)`` with weights, in lexicographic degree order.

    Each index sequence maps to the degree vector counting how often each
    variable appears; the weight is the multinomial coefficient
    ``n! / prod(d_i!)``.  Results are cached per ``(k, n)``.
    """
    if n < 1:
        raise DomainError(f"dimension index must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise DomainError(f"k must lie in 0..{n}, got {k}")
    n_fact = math.factorial(n)
    items = []
    for seq in _index_sequences(k, n):
        degrees = [0] * n
        for s in seq:
            degrees[s] += 1
        denom = 1
        for d in degrees:
            if d > 1:
                denom *= math.factorial(d)
        items.append(WeightedMonomial(Monomial(tuple(degrees)), n_fact // denom))
    items.sort(key=lambda wm: wm.monomial.degrees)
    return tuple(items)


def evaluate_monomial(wm: WeightedMonomial, a: SimplexPoint) -> Scalar:
    """Value of ``coefficient * prod(a_i ** d_i)`` at the point ``a``."""
    degrees = wm.monomial.degrees
    if len(degrees) > a.n + 1:
        raise DomainError(
            f"monomial uses {len(degrees)} variables but the point has "
            f"{a.n + 1} coordinates"
        )
    value: Scalar = wm.coefficient if isinstance(a.coords[0], Fraction) else float(
        wm.coefficient
    )
    for c, d in zip(a.coords, degrees):
        if d:
            value = value * c**d
    return value


def fosd_dominance_probability(a: SimplexPoint) -> Scalar:
    """Probability that a uniform random point FOSD-dominates ``a``.

    Sums the weighted full family evaluated at ``a`` and divides by ``u^n``.
    Exact in rational mode.  Raises SizeLimitError above n = 16.
    """
    n = a.n
    if n > EXACT_FOSD_MAX_N:
        raise SizeLimitError(
            f"exact FOSD evaluation is limited to n <= {EXACT_FOSD_MAX_N}, "
            f"got n = {n}"
        )
    family = enumerate_H(n, n)
    exact = isinstance(a.coords[0], Fraction)
    # Power tables avoid recomputing a_i ** d across the family.
    max_deg = n
    pows = [
        [c**d for d in range(max_deg + 1)] for c in a.coords[:n]
    ]
    if exact:
        total: Scalar = Fraction(0)
        for wm in family:
            term: Scalar = Fraction(wm.coefficient)
            for i, d in enumerate(wm.monomial.degrees):
                if d:
                    term *= pows[i][d]
            total += term
        return total / Fraction(a.u) ** n
    terms = []
    for wm in family:
        term = float(wm.coefficient)
        for i, d in enumerate(wm.monomial.degrees):
            if d:
                term *= pows[i][d]
        terms.append(term)
    value = math.fsum(terms) / float(a.u) ** n
    return min(1.0, max(0.0, value))
