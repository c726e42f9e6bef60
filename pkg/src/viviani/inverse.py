"""Isosceles triangle whose squared-distance locus is a prescribed canonical ellipse.

For the triangle ``A(0, a), B(-b, 0), C(b, 0)`` the locus ``Q = k`` is the
axis-aligned ellipse with ``alpha^2 = a^2 + 3 b^2`` and ``beta^2 = 2 a^2``,
centered at height ``2 a b^2 / (a^2 + 3 b^2)``. Shifting the triangle down by
that height centers the ellipse at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .errors import InvalidEllipse, NonPositiveParameter
from .geometry import Triangle, make_triangle


@dataclass(frozen=True)
class EllipseCanonical:
    """``x^2 / alpha2 + y^2 / beta2 = 1`` with ``alpha2 >= beta2 > 0``."""

    alpha2: float
    beta2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha2) and math.isfinite(self.beta2)):
            raise InvalidEllipse("ellipse axes must be finite")
        if self.beta2 <= 0.0:
            raise InvalidEllipse(f"beta2 must be positive, got {self.beta2}")
        if self.alpha2 < self.beta2:
            raise InvalidEllipse(f"alpha2 ({self.alpha2}) must be >= beta2 ({self.beta2})")


@dataclass(frozen=True)
class IsoscelesParams:
    a: float
    b: float
    k: float
    vertical_shift: float


def k_constant(a: float, b: float) -> float:
    """Squared-distance level of the isosceles triangle whose locus has unit canonical form."""
    if not (a > 0.0 and b > 0.0):
        raise NonPositiveParameter(f"a and b must be positive, got a={a}, b={b}")
    a2, b2 = a * a, b * b
    return 2.0 * a2 * (a2 * a2 + 7.0 * a2 * b2 + 10.0 * b2 * b2) / ((a2 + b2) * (a2 + 3.0 * b2))


def vertical_shift(a: float, b: float) -> float:
    return 2.0 * a * b * b / (a * a + 3.0 * b * b)


def triangle_for_ellipse(e: EllipseCanonical) -> Tuple[IsoscelesParams, Triangle]:
    a = math.sqrt(e.beta2 / 2.0)
    b = math.sqrt((e.alpha2 - a * a) / 3.0)
    s = vertical_shift(a, b)
    params = IsoscelesParams(a, b, k_constant(a, b), s)
    tri = make_triangle([(0.0, a - s), (-b, -s), (b, -s)])
    return params, tri


def is_circle_case(tri: Triangle, rtol: float = 1e-9) -> bool:
    """Whether the squared-distance loci of ``tri`` are circles (equilateral triangle)."""
    return tri.is_equilateral(rtol)
