"""Stochastic order predicates on the simplex and their dimension reductions.

Two partial orders are implemented.  First-order stochastic dominance (FOSD)
compares tail sums: ``x <= y`` when every tail sum of ``x`` is at most the
matching tail sum of ``y``.  Likelihood-ratio dominance (MLR) compares cross
products: ``x <= y`` when ``y_i * x_j <= x_i * y_j`` for every ``i < j``,
i.e. the ratio ``y_i / x_i`` is nondecreasing where defined.  MLR dominance
implies FOSD dominance; the converse fails from dimension index 2 on.

Both orders admit a reduction that rewrites a dominance question in
dimension index ``n`` as one in dimension index ``n - 1``; the reductions
are the workhorses behind the closed-form probabilities in the monomial and
analytics modules and are exposed here so they can be property-tested
directly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .core import (
    DomainError,
    OrderKind,
    OrderRelation,
    Scalar,
    SimplexPoint,
    tail_sum,
)

# Float-mode comparison slack, relative to u for tail sums and coordinate
# equality and to u^2 for cross products.
TAIL_RTOL = 1e-12
CROSS_RTOL = 1e-12
EQ_RTOL = 1e-12


def _check_same_space(x: SimplexPoint, y: SimplexPoint) -> None:
    if x.n != y.n:
        raise DomainError(f"dimension mismatch: {x.n} vs {y.n}")
    if not _same_u(x, y):
        raise DomainError(f"size mismatch: u={x.u!r} vs u={y.u!r}")


def _same_u(x: SimplexPoint, y: SimplexPoint) -> bool:
    if _exact_pair(x, y):
        return x.u == y.u
    return abs(float(x.u) - float(y.u)) <= EQ_RTOL * max(float(x.u), float(y.u))


def _exact_pair(x: SimplexPoint, y: SimplexPoint) -> bool:
    return isinstance(x.coords[0], Fraction) and isinstance(y.coords[0], Fraction)


def fosd_leq(x: SimplexPoint, y: SimplexPoint) -> bool:
    """True when ``x`` is dominated by ``y`` in first-order stochastic sense.

    Checks ``tail_sum(x, k) <= tail_sum(y, k)`` for every ``k``.  The k = 0
    tails both equal u, so the test effectively runs over ``k >= 1``.  In
    float mode each comparison carries ``1e-12 * u`` of slack.
    """
    _check_same_space(x, y)
    tx = x.tail_sums()
    ty = y.tail_sums()
    if _exact_pair(x, y):
        return all(tx[k] <= ty[k] for k in range(1, x.n + 1))
    slack = TAIL_RTOL * float(x.u)
    return all(float(tx[k]) <= float(ty[k]) + slack for k in range(1, x.n + 1))


def mlr_leq(x: SimplexPoint, y: SimplexPoint) -> bool:
    """True when ``x`` is dominated by ``y`` in likelihood-ratio sense.

    Checks ``y_i * x_j <= x_i * y_j`` for all ``i < j``.  In float mode each
    comparison carries ``1e-12 * u^2`` of slack.
    """
    _check_same_space(x, y)
    a, b = x.coords, y.coords
    if _exact_pair(x, y):
        return all(
            b[i] * a[j] <= a[i] * b[j]
            for i in range(x.n)
            for j in range(i + 1, x.n + 1)
        )
    slack = CROSS_RTOL * float(x.u) ** 2
    return all(
        float(b[i]) * float(a[j]) <= float(a[i]) * float(b[j]) + slack
        for i in range(x.n)
        for j in range(i + 1, x.n + 1)
    )


def _coordwise_equal(x: SimplexPoint, y: SimplexPoint) -> bool:
    if _exact_pair(x, y):
        return x.coords == y.coords
    slack = EQ_RTOL * float(x.u)
    return all(
        abs(float(a) - float(b)) <= slack for a, b in zip(x.coords, y.coords)
    )


def compare(x: SimplexPoint, y: SimplexPoint, order: OrderKind | str) -> OrderRelation:
    """Classify the pair under the given order.

    Returns EQUAL when both directions hold and the points agree
    coordinatewise (within tolerance in float mode), LESS when only
    ``x <= y`` holds, GREATER when only ``y <= x`` holds, and INCOMPARABLE
    otherwise.
    """
    order = OrderKind(order) if not isinstance(order, OrderKind) else order
    leq = fosd_leq if order is OrderKind.FOSD else mlr_leq
    xy = leq(x, y)
    yx = leq(y, x)
    if xy and yx and _coordwise_equal(x, y):
        return OrderRelation.EQUAL
    if xy and not yx:
        return OrderRelation.LESS
    if yx and not xy:
        return OrderRelation.GREATER
    return OrderRelation.INCOMPARABLE


def fosd_bracket_index(a: SimplexPoint, x_last: Scalar) -> int:
    """Index ``k`` with ``tail_sum(a, k) <= x_last < tail_sum(a, k - 1)``.

    The brackets for ``k = 1..n`` partition ``[a_n, u)`` half-open on the
    right, so the index is unique.  Raises DomainError when ``x_last`` lies
    below the last coordinate of ``a`` or at/above ``u``.
    """
    tails = a.tail_sums()
    if not 0 <= x_last:
        raise DomainError(f"x_last must be nonnegative, got {x_last!r}")
    if x_last < tails[a.n]:
        raise DomainError(
            f"x_last={x_last!r} lies below the final coordinate {tails[a.n]!r}; "
            "no bracket contains it"
        )
    if x_last >= tails[0]:
        raise DomainError(f"x_last={x_last!r} must be strictly below u={a.u!r}")
    k = a.n
    while k > 1 and x_last >= tails[k - 1]:
        k -= 1
    return k


def fosd_reduce(
    a: SimplexPoint, x_last: Scalar, k: int | None = None
) -> tuple[SimplexPoint, Scalar]:
    """Strip one dimension from a FOSD dominance question.

    For ``a`` with ``n + 1`` coordinates and a prospective last coordinate
    ``x_last`` of the dominating point, returns ``(reduced_a, target_u)``
    such that ``a <= x`` in the original simplex iff ``reduced_a <= prefix(x)``
    in the simplex of size ``target_u = u - x_last`` one dimension down.
    The reduced point keeps coordinates ``0..k-2`` of ``a``, replaces
    coordinate ``k - 1`` by ``tail_sum(a, k - 1) - x_last``, and pads with
    zeros.

    ``k`` must satisfy ``tail_sum(a, k) <= x_last < tail_sum(a, k - 1)``;
    pass None to have it computed.  A ``k`` inconsistent with ``x_last``
    raises DomainError.
    """
    tails = a.tail_sums()
    n = a.n
    if k is None:
        k = fosd_bracket_index(a, x_last)
    else:
        if not 1 <= k <= n:
            raise DomainError(f"bracket index {k} out of range 1..{n}")
        if not (tails[k] <= x_last < tails[k - 1]):
            raise DomainError(
                f"x_last={x_last!r} not in bracket {k}: "
                f"[{tails[k]!r}, {tails[k - 1]!r})"
            )
    target_u = a.u - x_last
    pivot = tails[k - 1] - x_last
    zero = a.coords[0] * 0
    reduced = a.coords[: k - 1] + (pivot,) + (zero,) * (n - k)
    return SimplexPoint(reduced, target_u), target_u


def mlr_reduce(
    a: SimplexPoint, x: SimplexPoint
) -> tuple[SimplexPoint, SimplexPoint, bool]:
    """Strip one dimension from an MLR dominance question.

    Returns ``(scaled_a, prefix_x, extra_condition)`` where ``prefix_x``
    drops the last coordinate of ``x``, ``scaled_a`` rescales the matching
    prefix of ``a`` onto the same smaller simplex, and ``extra_condition``
    is the single cross-product check ``x_{n-1} * a_n <= a_{n-1} * x_n``.
    Then ``a <= x`` in MLR sense iff ``extra_condition`` holds and
    ``scaled_a <= prefix_x`` one dimension down, provided the next-to-last
    coordinate of ``a`` is positive (for boundary points with
    ``a_{n-1} = 0 < a_n`` the equivalence can fail).

    Requires ``x``'s last coordinate strictly below ``u`` and a prefix of
    ``a`` with positive mass.
    """
    _check_same_space(a, x)
    n = a.n
    if not x.coords[n] < x.u:
        raise DomainError("the last coordinate of x must be strictly below u")
    target_u = x.u - x.coords[n]
    prefix_mass = a.u - a.coords[n]
    if prefix_mass <= 0:
        raise DomainError(
            "a concentrates all mass on its last coordinate; "
            "the rescaled prefix is undefined"
        )
    scale = target_u / prefix_mass
    scaled = SimplexPoint(tuple(c * scale for c in a.coords[:n]), target_u)
    prefix = SimplexPoint(x.coords[:n], target_u)
    if _exact_pair(a, x):
        extra = x.coords[n - 1] * a.coords[n] <= a.coords[n - 1] * x.coords[n]
    else:
        slack = CROSS_RTOL * float(a.u) ** 2
        extra = (
            float(x.coords[n - 1]) * float(a.coords[n])
            <= float(a.coords[n - 1]) * float(x.coords[n]) + slack
        )
    return scaled, prefix, extra
