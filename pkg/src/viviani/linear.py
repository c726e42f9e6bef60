"""Distance-sum functional of a convex polygon and its level sets.

Inside a convex polygon the sum of distances to the sides is the sum of
negated signed distances, hence an affine function of the point. Its level
sets are parallel chords, it is constant exactly when the outward normals
cancel, and three non-collinear equal values force it to be constant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import CollinearSamples, DegenerateInput, PointOutside, WitnessOutside
from .geometry import (
    EPS_GEOM,
    Containment,
    ConvexPolygon,
    Line,
    Point2,
    PointLike,
    Triangle,
    as_point,
    clip_line,
    contains,
    make_triangle,
)

EPS_VAL = 1e-9
ZERO_GRADIENT = 1e-9


@dataclass(frozen=True)
class AffineDistanceSum:
    """``value(P) = gradient . P + constant``."""

    gradient: Tuple[float, float]
    constant: float

    def __call__(self, p: PointLike) -> float:
        return self.value(p)

    def value(self, p: PointLike) -> float:
        p = as_point(p)
        return self.gradient[0] * p.x + self.gradient[1] * p.y + self.constant

    @property
    def gradient_norm(self) -> float:
        return math.hypot(*self.gradient)

    def is_constant(self, tol: float = ZERO_GRADIENT) -> bool:
        return self.gradient_norm <= tol

    def level_line(self, c: float) -> Line:
        """The line ``value = c``; only defined for a nonzero gradient."""
        gx, gy = self.gradient
        g2 = gx * gx + gy * gy
        if g2 == 0.0:
            raise DegenerateInput("constant functional has no level lines")
        r = (c - self.constant) / g2
        return Line(Point2(gx * r, gy * r), Point2(-gy, gx))


class HabitatKind(enum.Enum):
    EVERYWHERE = "everywhere"
    SEGMENT = "segment"
    POINT = "point"
    EMPTY = "empty"


@dataclass(frozen=True)
class Habitat:
    """Where a fixed leg-sum ``level`` is attainable inside the polygon."""

    kind: HabitatKind
    level: float
    points: Tuple[Point2, ...] = ()

    @property
    def direction(self) -> Optional[Point2]:
        """Unit direction of a segment habitat, ``None`` otherwise."""
        if self.kind is not HabitatKind.SEGMENT:
            return None
        a, b = self.points
        d = b - a
        return d.scaled(1.0 / d.norm())


@dataclass(frozen=True)
class ConstancyVerdict:
    constant: bool
    value: Optional[float] = None


def distance_sum_functional(poly: ConvexPolygon) -> AffineDistanceSum:
    gx = gy = c = 0.0
    for side in poly.sides:
        gx -= side.normal[0]
        gy -= side.normal[1]
        c += side.offset
    return AffineDistanceSum((gx, gy), c)


def direct_distance_sum(poly: ConvexPolygon, p: PointLike) -> float:
    """Sum of unsigned distances from ``p`` to the side lines."""
    return sum(abs(side.signed_distance(p)) for side in poly.sides)


def value_range(poly: ConvexPolygon) -> Tuple[float, float]:
    """Minimum and maximum of the distance sum over the closed polygon."""
    v = distance_sum_functional(poly)
    values = [v(p) for p in poly.vertices]
    return min(values), max(values)


def level_segment(
    poly: ConvexPolygon, c: float, eps_val: float = EPS_VAL, eps: float = EPS_GEOM
) -> Habitat:
    """Points of the closed polygon where the distance sum equals ``c``.

    Levels at the extremes (within ``eps_val``) resolve to the extreme vertex,
    or to the whole edge when that edge is itself a level set.
    """
    v = distance_sum_functional(poly)
    if v.is_constant():
        kind = HabitatKind.EVERYWHERE if abs(v.constant - c) <= eps_val else HabitatKind.EMPTY
        return Habitat(kind, c)

    values = [v(p) for p in poly.vertices]
    lo, hi = min(values), max(values)
    if c < lo - eps_val or c > hi + eps_val:
        return Habitat(HabitatKind.EMPTY, c)
    if abs(c - lo) <= eps_val or abs(c - hi) <= eps_val:
        n = len(poly)
        hits = [i for i in range(n) if abs(values[i] - c) <= eps_val]
        if len(hits) == 1:
            return Habitat(HabitatKind.POINT, c, (poly.vertices[hits[0]],))
        # An affine function attains an extreme on at most one edge of a strictly convex polygon.
        i, j = hits[0], hits[-1]
        if j == n - 1 and i == 0:
            i, j = j, i
        return Habitat(HabitatKind.SEGMENT, c, (poly.vertices[i], poly.vertices[j]))

    pts = clip_line(poly, v.level_line(c), eps)
    if len(pts) == 2:
        return Habitat(HabitatKind.SEGMENT, c, pts)
    if len(pts) == 1:
        return Habitat(HabitatKind.POINT, c, pts)
    return Habitat(HabitatKind.EMPTY, c)


def parallel_decomposition(poly: ConvexPolygon, levels: int) -> List[Habitat]:
    """Level segments at ``levels`` evenly spaced mid-levels of the value range.

    A constant functional yields the single-element list ``[everywhere]``.
    """
    if levels < 1:
        raise ValueError("levels must be a positive integer")
    v = distance_sum_functional(poly)
    if v.is_constant():
        return [Habitat(HabitatKind.EVERYWHERE, v.constant)]
    lo, hi = value_range(poly)
    step = (hi - lo) / levels
    return [level_segment(poly, lo + (i + 0.5) * step) for i in range(levels)]


def _triangle_area(p: Point2, q: Point2, r: Point2) -> float:
    return 0.5 * abs((q - p).cross(r - p))


def infer_constancy(
    poly: ConvexPolygon,
    p1: PointLike,
    p2: PointLike,
    p3: PointLike,
    eps_val: float = EPS_VAL,
    eps: float = EPS_GEOM,
) -> ConstancyVerdict:
    """Decide whether the distance sum is constant from three sample points.

    Equal values at three non-collinear points of the closed polygon force the
    functional to be constant everywhere; for a triangle that means equilateral.
    Points on the boundary are accepted within ``eps``.
    """
    pts = [as_point(p) for p in (p1, p2, p3)]
    if _triangle_area(*pts) <= eps:
        raise CollinearSamples("sample points are collinear")
    for p in pts:
        if contains(poly, p, eps) is Containment.OUTSIDE:
            raise PointOutside(f"{p} is outside the polygon")
    v = distance_sum_functional(poly)
    vals = [v(p) for p in pts]
    if max(vals) - min(vals) <= eps_val:
        return ConstancyVerdict(True, sum(vals) / 3.0)
    return ConstancyVerdict(False)


def reconstruct_equilateral_from_base(
    v1: PointLike, v2: PointLike, witnesses: Sequence[PointLike], eps: float = EPS_GEOM
) -> Triangle:
    """Equilateral triangle on base ``v1 v2`` that holds every witness point.

    The apex goes on whichever side of the base the witnesses lie.
    """
    a, b = as_point(v1), as_point(v2)
    if (b - a).norm() <= eps:
        raise DegenerateInput("base endpoints coincide")
    w = [as_point(p) for p in witnesses]
    if len(w) != 3:
        raise ValueError("exactly three witness points are required")
    if _triangle_area(*w) <= eps:
        raise CollinearSamples("witness points are collinear")

    mid = Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    e = b - a
    h = math.sqrt(3.0) / 2.0
    up = Point2(-e.y * h, e.x * h)
    for apex in (mid + up, mid - up):
        tri = make_triangle([a, b, apex], eps)
        if all(contains(tri, p, eps) is not Containment.OUTSIDE for p in w):
            return tri
    raise WitnessOutside("witnesses fit in neither equilateral triangle on this base")
