"""Schatten norm indices p in [1, inf], stored by their reciprocal.

Keeping u = 1/p instead of p makes ``inf`` an ordinary value (u = 0),
turns index interpolation into a plain convex combination and makes the
conjugation p -> p' the reflection u -> 1 - u.  Reciprocals are kept as
:class:`fractions.Fraction`, so comparisons between indices built from
rationals are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

Number = int | float | Fraction | str


class IndexDomainError(ValueError):
    """Raised for indices outside [1, inf] or malformed index strings."""


def _to_fraction(x: Real | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if not math.isfinite(x):
            raise IndexDomainError(f"non-finite value {x!r}")
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True, order=False)
class NormIndex:
    """A Schatten index p, represented by ``u = 1/p`` with ``0 <= u <= 1``."""

    u: Fraction

    def __post_init__(self) -> None:
        u = _to_fraction(self.u)
        if not 0 <= u <= 1:
            raise IndexDomainError(f"reciprocal index {u} outside [0, 1]")
        object.__setattr__(self, "u", u)

    @classmethod
    def of(cls, p: Number | NormIndex) -> NormIndex:
        """Build an index from p itself: a number, ``"inf"`` or a string like ``"4/3"``."""
        if isinstance(p, NormIndex):
            return p
        if isinstance(p, str):
            s = p.strip().lower()
            if s in ("inf", "infinity", "oo", "∞"):
                return cls(Fraction(0))
            try:
                value = Fraction(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise IndexDomainError(f"cannot parse norm index {p!r}") from exc
        elif isinstance(p, float) and math.isinf(p):
            if p < 0:
                raise IndexDomainError("negative infinite index")
            return cls(Fraction(0))
        else:
            value = _to_fraction(p)
        if value < 1:
            raise IndexDomainError(f"norm index {value} is below 1")
        return cls(1 / value)

    @property
    def is_inf(self) -> bool:
        return self.u == 0

    def value(self) -> Fraction | float:
        """p itself: a Fraction, or ``math.inf`` for u = 0."""
        if self.u == 0:
            return math.inf
        return 1 / self.u

    def __float__(self) -> float:
        return float(self.value())

    def __str__(self) -> str:
        if self.u == 0:
            return "inf"
        p = 1 / self.u
        return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"

    def __repr__(self) -> str:
        return f"NormIndex({self})"

    # Ordering follows p, i.e. reversed in u.
    def __lt__(self, other: NormIndex) -> bool:
        return self.u > other.u

    def __le__(self, other: NormIndex) -> bool:
        return self.u >= other.u

    def __gt__(self, other: NormIndex) -> bool:
        return self.u < other.u

    def __ge__(self, other: NormIndex) -> bool:
        return self.u <= other.u


INF = NormIndex(Fraction(0))
ONE = NormIndex(Fraction(1))
TWO = NormIndex(Fraction(1, 2))


def index(p: Number | NormIndex) -> NormIndex:
    return NormIndex.of(p)


def conjugate(a: NormIndex) -> NormIndex:
    """Hölder conjugate: 1/p + 1/p' = 1."""
    return NormIndex(1 - a.u)


def scale_coord(a: NormIndex) -> Fraction:
    """Order-preserving map [1, inf] -> [0, 1], p -> 1 - 1/p."""
    return 1 - a.u


def interpolate_index(a: NormIndex, b: NormIndex, theta: Real) -> NormIndex:
    """Index whose reciprocal is (1 - theta)/a + theta/b."""
    t = _to_fraction(theta)
    if not 0 <= t <= 1:
        raise ValueError(f"theta={theta} outside [0, 1]")
    return NormIndex((1 - t) * a.u + t * b.u)


def parse_index(text: str) -> NormIndex:
    """CLI-facing parser; accepts ``inf`` and rationals such as ``4/3`` or ``2.5``."""
    return NormIndex.of(text)
