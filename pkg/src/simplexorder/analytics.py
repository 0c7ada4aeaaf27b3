"""Closed forms for likelihood-ratio dominance and the identities behind them.

The probability that a uniform random point of the simplex MLR-dominates a
fixed reference point ``a`` is the telescoping product ``prod_i a_i / S_i``
with ``S_i = a_i + ... + a_n``.  Restricting the event to points whose last
coordinate stays below a cap ``b`` subtracts an alternating correction whose
shape depends on which segment of ``[a_n, u]`` the cap falls in; the segment
brackets are ``a_n * u / S_{m-1} .. a_n * u / S_m`` for ``m = 1..n``.

Two algebraic identities keep the corrections honest and are exposed for
verification: an alternating sum over partial-sum products that must vanish
for every positive vector, and the classical power-sum-over-differences
evaluation (0 below degree n-1, then 1, then the plain sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import DomainError, Scalar, SimplexPoint


@dataclass(frozen=True)
class SegmentIndex:
    """Which segment of ``[a_n, u]`` a cap ``b`` falls in.

    ``m`` runs 1..n; ``low`` and ``high`` are the segment endpoints
    ``a_n * u / S_{m-1}`` and ``a_n * u / S_m``.
    """

    m: int
    low: Scalar
    high: Scalar


def _suffix_sums(coords: Sequence[Scalar]) -> list[Scalar]:
    out = [coords[-1]]
    for c in reversed(coords[:-1]):
        out.append(out[-1] + c)
    out.reverse()
    return out


def mlr_dominance_probability(a: SimplexPoint) -> Scalar:
    """Probability that a uniform random point MLR-dominates ``a``.

    Evaluates ``prod_{i=0}^{n} a_i / (a_i + ... + a_n)``; the last factor is
    one.  A zero coordinate before the last makes the upper set degenerate
    (it lies inside a hyperplane) and the product is correctly zero.  A zero
    last coordinate leaves the product undefined and raises DomainError.
    """
    coords = a.coords
    if coords[-1] == 0:
        raise DomainError(
            "the last coordinate of a is zero; the likelihood-ratio "
            "product is undefined"
        )
    suffix = _suffix_sums(coords)
    value = coords[0] / suffix[0]
    for i in range(1, a.n + 1):
        value = value * (coords[i] / suffix[i])
    return value


def _require_positive(a: SimplexPoint) -> None:
    if any(c == 0 for c in a.coords):
        raise DomainError("all coordinates of a must be strictly positive")


def segment_index(a: SimplexPoint, b: Scalar) -> SegmentIndex:
    """Locate the cap ``b`` within the segments of ``[a_n, u]``.

    Returns the smallest ``m`` whose segment contains ``b``; shared
    endpoints resolve to the smaller index.  Requires strictly positive
    coordinates and ``a_n <= b <= u``.
    """
    _require_positive(a)
    n = a.n
    if b < a.coords[n] or b > a.u:
        raise DomainError(
            f"cap b={b!r} outside [{a.coords[n]!r}, {a.u!r}]"
        )
    suffix = _suffix_sums(a.coords)
    an_u = a.coords[n] * a.u
    for m in range(1, n + 1):
        if b <= an_u / suffix[m] or m == n:
            return SegmentIndex(m=m, low=an_u / suffix[m - 1], high=an_u / suffix[m])
    raise AssertionError("unreachable: segments cover [a_n, u]")


def _restricted_value(a: SimplexPoint, b: Scalar, m: int) -> Scalar:
    """Restricted probability evaluated with an explicit segment index.

    The public entry point locates ``m`` first; this helper exists so the
    two formulas adjacent to a segment boundary can be compared at the
    boundary itself.
    """
    n = a.n
    coords = a.coords
    exact = isinstance(coords[0], Fraction) and not isinstance(b, float)
    base = mlr_dominance_probability(a)
    suffix = _suffix_sums(coords)
    prod_a = coords[0]
    for c in coords[1:]:
        prod_a = prod_a * c
    # Partial sums ps[i][j] = a_i + ... + a_j for the correction denominators.
    ps = [[None] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        acc = coords[i]
        ps[i][i] = acc
        for j in range(i + 1, n + 1):
            acc = acc + coords[j]
            ps[i][j] = acc
    terms = []
    sign = 1
    for k in range(0, n - m + 1):
        rim = a.u - (suffix[n - k] / coords[n]) * b
        den = 1
        for i in range(0, n - k):
            den = den * ps[i][n - k - 1]
        for i in range(0, k + 1):
            den = den * ps[n - k][n - i]
        terms.append(sign * (rim**n) * prod_a / den)
        sign = -sign
    if exact:
        correction = sum(terms) / Fraction(a.u) ** n
        return base - correction
    base = float(base)
    correction = math.fsum([float(t) for t in terms]) / float(a.u) ** n
    return min(base, max(0.0, base - correction))


def mlr_dominance_probability_restricted(a: SimplexPoint, b: Scalar) -> Scalar:
    """Probability of MLR-dominating ``a`` with last coordinate at most ``b``.

    For ``b`` below the last coordinate of ``a`` the event is empty.  For
    ``b`` in segment ``m`` the unrestricted product acquires an alternating
    correction with ``n - m + 1`` terms; at ``b = u`` the correction is zero
    and the unrestricted value returns exactly.  Requires strictly positive
    coordinates and ``b <= u``.
    """
    _require_positive(a)
    exact = isinstance(a.coords[0], Fraction) and not isinstance(b, float)
    if b > a.u:
        raise DomainError(f"cap b={b!r} exceeds u={a.u!r}")
    if b < a.coords[a.n]:
        return Fraction(0) if exact else 0.0
    m = segment_index(a, b).m
    return _restricted_value(a, b, m)


def mlr_integral_constant(n: int, u: Scalar) -> Scalar:
    """Integral of the dominance product over the solid simplex: u^n / n!^2."""
    if n < 1:
        raise DomainError(f"dimension index must be >= 1, got {n}")
    if not u > 0:
        raise DomainError(f"size u must be positive, got {u!r}")
    if isinstance(u, Fraction) or isinstance(u, int):
        return Fraction(u) ** n / math.factorial(n) ** 2
    return float(u) ** n / math.factorial(n) ** 2


def knuth_power_sum_terms(xs: Sequence[Scalar], r: int) -> list[Scalar]:
    """Terms ``x_j^r / prod_{k != j} (x_j - x_k)`` for distinct values."""
    m = len(xs)
    if m < 2:
        raise DomainError("need at least two values")
    if not 0 <= r <= m:
        raise DomainError(f"power r={r} out of range 0..{m}")
    if len(set(xs)) != m:
        raise DomainError("values must be pairwise distinct")
    terms = []
    for j, xj in enumerate(xs):
        den = 1
        for k, xk in enumerate(xs):
            if k != j:
                den = den * (xj - xk)
        terms.append(xj**r / den)
    return terms


def knuth_power_sum(xs: Sequence[Scalar], r: int) -> Scalar:
    """Sum of ``x_j^r / prod_{k != j}(x_j - x_k)`` over ``j``.

    Equals 0 for ``r < len(xs) - 1``, 1 for ``r = len(xs) - 1``, and the
    plain sum of the values for ``r = len(xs)``.
    """
    terms = knuth_power_sum_terms(xs, r)
    if isinstance(terms[0], float):
        return math.fsum(terms)
    return sum(terms)


def alternating_identity_terms(a: Sequence[Scalar]) -> list[Scalar]:
    """Signed terms of the vanishing alternating partial-sum identity.

    For a positive vector ``(a_0, ..., a_n)`` the k-th term is
    ``(-1)^k (a_0 + ... + a_{n-k})^n`` divided by the product of the
    leading partial sums ``a_i + ... + a_{n-k}`` for ``i <= n - k`` and the
    trailing partial sums ``a_{n+1-k} + ... + a_{n-i}`` for ``i < k``.
    """
    n = len(a) - 1
    if n < 1:
        raise DomainError("need at least two entries")
    if any(not c > 0 for c in a):
        raise DomainError("entries must be strictly positive")
    ps = [[None] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        acc = a[i]
        ps[i][i] = acc
        for j in range(i + 1, n + 1):
            acc = acc + a[j]
            ps[i][j] = acc
    terms = []
    sign = 1
    for k in range(0, n + 1):
        num = ps[0][n - k] ** n
        den = 1
        for i in range(0, n - k + 1):
            den = den * ps[i][n - k]
        for i in range(0, k):
            den = den * ps[n + 1 - k][n - i]
        terms.append(sign * num / den)
        sign = -sign
    return terms


def alternating_identity_residual(a: Sequence[Scalar]) -> Scalar:
    """Value of the alternating identity; exactly zero for every valid input.

    In rational arithmetic the return is exactly ``Fraction(0)``; in float
    arithmetic it is a compensated sum whose magnitude reflects rounding
    only.
    """
    terms = alternating_identity_terms(a)
    if isinstance(terms[0], float):
        return math.fsum(terms)
    return sum(terms)


def fosd_comparability_probability(n: int) -> Fraction:
    """Probability two independent uniform points are FOSD-comparable."""
    if n < 1:
        raise DomainError(f"dimension index must be >= 1, got {n}")
    return Fraction(2, n + 1)


def mlr_comparability_probability(n: int) -> Fraction:
    """Probability two independent uniform points are MLR-comparable."""
    if n < 1:
        raise DomainError(f"dimension index must be >= 1, got {n}")
    return Fraction(2, math.factorial(n + 1))
