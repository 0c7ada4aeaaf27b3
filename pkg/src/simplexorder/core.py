"""Points on the scaled probability simplex and the scalar modes they carry.

The simplex of size ``u`` in dimension index ``n`` is the set of vectors
``(x_0, ..., x_n)`` with nonnegative coordinates summing to ``u``.  Every
quantity in this package is computed either in float64 or in exact rational
arithmetic; the mode is inferred from the coordinate types of the points
involved.  Rational mode uses :class:`fractions.Fraction` end to end and
never rounds.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

Scalar = Union[int, float, Fraction]

_INT_RE = re.compile(r"[+-]?\d+")

# Relative slack for float-mode sum validation and comparisons.  All float
# tolerances in the package scale with u (or u^2 for cross products).
SUM_RTOL = 1e-12


class SimplexOrderError(Exception):
    """Base class for errors raised by this package."""


class DomainError(SimplexOrderError, ValueError):
    """An input violates a documented precondition."""


class SizeLimitError(SimplexOrderError):
    """A request exceeds a documented size ceiling."""


class ScalarMode(Enum):
    """Arithmetic backend: IEEE float64 or exact rationals."""

    FLOAT64 = "float"
    EXACT_RATIONAL = "rational"


class OrderKind(Enum):
    """Which stochastic order a comparison uses."""

    FOSD = "fosd"
    MLR = "mlr"


class OrderRelation(Enum):
    """Outcome of comparing two points under a stochastic order."""

    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _is_exact(value: Scalar) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def parse_scalar(text: str, mode: ScalarMode | None = None) -> Scalar:
    """Parse a scalar from a CLI-style string.

    Accepts plain integers, decimals, and ``p/q`` rational literals.  With
    ``mode=EXACT_RATIONAL`` the result is always a Fraction (decimal strings
    convert exactly); with ``mode=FLOAT64`` it is always a float.  Without a
    mode, ``p/q`` literals yield Fractions and everything else floats.
    """
    text = text.strip()
    if not text:
        raise DomainError("empty scalar")
    try:
        if mode is ScalarMode.EXACT_RATIONAL:
            return Fraction(text)
        if mode is ScalarMode.FLOAT64:
            return float(Fraction(text)) if "/" in text else float(text)
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse scalar {text!r}: {exc}") from None


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the simplex of size ``u`` with ``n + 1`` coordinates.

    Coordinates are stored either all as floats or all as Fractions.  In
    float mode the coordinate sum may miss ``u`` by a relative 1e-12; the
    constructor absorbs the discrepancy into the last coordinate so that
    downstream tail sums are consistent.  In rational mode the sum must be
    exact.
    """

    coords: tuple[Scalar, ...]
    u: Scalar = 1

    def __post_init__(self) -> None:
        coords = tuple(self.coords)
        if len(coords) < 2:
            raise DomainError("a simplex point needs at least two coordinates")
        u = self.u
        if not u > 0:
            raise DomainError(f"size u must be positive, got {u!r}")
        exact = _is_exact(u) and all(_is_exact(c) for c in coords)
        if exact:
            coords = tuple(Fraction(c) for c in coords)
            u = Fraction(u)
            if any(c < 0 for c in coords):
                raise DomainError("coordinates must be nonnegative")
            if sum(coords) != u:
                raise DomainError(
                    f"coordinates sum to {sum(coords)}, expected exactly {u}"
                )
        else:
            coords = tuple(float(c) for c in coords)
            u = float(u)
            if any(c < 0 for c in coords):
                raise DomainError("coordinates must be nonnegative")
            total = math.fsum(coords)
            if abs(total - u) > SUM_RTOL * u:
                raise DomainError(
                    f"coordinates sum to {total!r}, expected {u!r} "
                    f"(relative slack {SUM_RTOL})"
                )
            if total != u:
                last = max(0.0, u - math.fsum(coords[:-1]))
                coords = coords[:-1] + (last,)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "u", u)

    @property
    def n(self) -> int:
        """Dimension index: one less than the number of coordinates."""
        return len(self.coords) - 1

    @property
    def mode(self) -> ScalarMode:
        if isinstance(self.coords[0], Fraction):
            return ScalarMode.EXACT_RATIONAL
        return ScalarMode.FLOAT64

    def tail_sums(self) -> tuple[Scalar, ...]:
        """All tail sums: entry k holds coords[k] + ... + coords[n]."""
        out = []
        acc = self.coords[0] * 0
        for c in reversed(self.coords):
            acc = acc + c
            out.append(acc)
        return tuple(reversed(out))

    def to_json_dict(self) -> dict:
        return {
            "coords": [_scalar_repr(c) for c in self.coords],
            "u": _scalar_repr(self.u),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SimplexPoint":
        tokens = [str(c) for c in data["coords"]] + [str(data["u"])]
        exact = all("/" in t or _INT_RE.fullmatch(t) for t in tokens)
        mode = ScalarMode.EXACT_RATIONAL if exact else None
        coords = [parse_scalar(t, mode) for t in tokens[:-1]]
        u = parse_scalar(tokens[-1], mode)
        return cls(tuple(coords), u)


def _scalar_repr(value: Scalar) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return format(float(value), ".17g")


def tail_sum(point: SimplexPoint, k: int) -> Scalar:
    """Sum of coordinates from index ``k`` through ``n``.

    ``k = 0`` returns ``u`` (up to float representation); ``k = n`` returns
    the last coordinate.  Raises IndexError for ``k`` outside ``0..n``.
    """
    if not 0 <= k <= point.n:
        raise IndexError(f"tail index {k} out of range 0..{point.n}")
    coords = point.coords[k:]
    if isinstance(coords[0], float):
        return math.fsum(coords)
    return sum(coords)


@dataclass(frozen=True)
class SimplexVolume:
    """Euclidean volume ``sqrt(n + 1) / n! * u^n``, kept in radical form.

    ``coefficient`` is ``u^n / n!`` (exact when u is exact) and ``radicand``
    is ``n + 1``; the numeric value is ``coefficient * sqrt(radicand)``.
    Dividing two volumes with the same radicand cancels the root, so ratios
    of volumes in a common dimension stay exact in rational mode.
    """

    coefficient: Scalar
    radicand: int

    def __float__(self) -> float:
        return float(self.coefficient) * math.sqrt(self.radicand)

    @property
    def value(self) -> float:
        return float(self)

    def __truediv__(self, other: "SimplexVolume") -> Scalar:
        if not isinstance(other, SimplexVolume):
            return NotImplemented
        if self.radicand == other.radicand:
            return self.coefficient / other.coefficient
        return float(self) / float(other)


def simplex_volume(n: int, u: Scalar) -> SimplexVolume:
    """Volume of the size-``u`` simplex with dimension index ``n``."""
    if n < 1:
        raise DomainError(f"dimension index must be >= 1, got {n}")
    if not u > 0:
        raise DomainError(f"size u must be positive, got {u!r}")
    if _is_exact(u):
        coeff: Scalar = Fraction(u) ** n / math.factorial(n)
    else:
        coeff = float(u) ** n / math.factorial(n)
    return SimplexVolume(coefficient=coeff, radicand=n + 1)
