"""Validated planar primitives: points, oriented lines, convex polygons and triangles.

Sign convention: every polygon side is an :class:`OrientedLine` whose unit
normal points *outward*, so signed distances are negative on the interior
side. Polygons are stored counterclockwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple, Union

from .errors import DegenerateInput, NotConvex

EPS_GEOM = 1e-9

PointLike = Union["Point2", Tuple[float, float], Sequence[float]]


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self) -> None:
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DegenerateInput(f"non-finite point ({self.x}, {self.y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def scaled(self, s: float) -> "Point2":
        return Point2(self.x * s, self.y * s)

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


def as_point(p: PointLike) -> Point2:
    if isinstance(p, Point2):
        return p
    x, y = p
    return Point2(x, y)


def distance(p: PointLike, q: PointLike) -> float:
    p, q = as_point(p), as_point(q)
    return math.hypot(p.x - q.x, p.y - q.y)


@dataclass(frozen=True)
class OrientedLine:
    """The line ``{P : normal . P = offset}`` with a unit normal."""

    normal: Tuple[float, float]
    offset: float

    def __post_init__(self) -> None:
        nx, ny = self.normal
        if abs(math.hypot(nx, ny) - 1.0) > 1e-12:
            raise DegenerateInput("OrientedLine normal must have unit length")

    @classmethod
    def from_equation(cls, a: float, b: float, c: float) -> "OrientedLine":
        """Line ``a*x + b*y = c``; the normal is ``(a, b)`` normalized."""
        n = math.hypot(a, b)
        if n == 0.0:
            raise DegenerateInput("line equation with zero normal")
        return cls((a / n, b / n), c / n)

    @classmethod
    def through(cls, p: PointLike, q: PointLike) -> "OrientedLine":
        """Line through ``p`` then ``q``, normal on the right of the travel direction.

        For a counterclockwise polygon edge this is the outward normal.
        """
        p, q = as_point(p), as_point(q)
        ex, ey = q.x - p.x, q.y - p.y
        length = math.hypot(ex, ey)
        if length == 0.0:
            raise DegenerateInput("line through coincident points")
        nx, ny = ey / length, -ex / length
        # Offset from the edge midpoint keeps both endpoints symmetric in rounding.
        mx, my = 0.5 * (p.x + q.x), 0.5 * (p.y + q.y)
        return cls((nx, ny), nx * mx + ny * my)

    def signed_distance(self, p: PointLike) -> float:
        p = as_point(p)
        return self.normal[0] * p.x + self.normal[1] * p.y - self.offset

    def direction(self) -> Point2:
        return Point2(-self.normal[1], self.normal[0])

    def foot(self, p: PointLike) -> Point2:
        """Orthogonal projection of ``p`` onto the line."""
        p = as_point(p)
        d = self.signed_distance(p)
        return Point2(p.x - d * self.normal[0], p.y - d * self.normal[1])


def signed_distance(line: OrientedLine, p: PointLike) -> float:
    return line.signed_distance(p)


@dataclass(frozen=True)
class Line:
    """Infinite line given by a point and a (nonzero) direction."""

    point: Point2
    direction: Point2

    def __post_init__(self) -> None:
        object.__setattr__(self, "point", as_point(self.point))
        d = as_point(self.direction)
        if d.norm() == 0.0:
            raise DegenerateInput("line direction must be nonzero")
        object.__setattr__(self, "direction", d)

    @classmethod
    def from_equation(cls, a: float, b: float, c: float) -> "Line":
        """The line ``a*x + b*y = c``, anchored at its point closest to the origin."""
        n2 = a * a + b * b
        if n2 == 0.0:
            raise DegenerateInput("line equation with zero normal")
        return cls(Point2(a * c / n2, b * c / n2), Point2(-b, a))

    def at(self, t: float) -> Point2:
        return Point2(self.point.x + t * self.direction.x, self.point.y + t * self.direction.y)


class Containment(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _signed_area(pts: Sequence[Point2]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        s += pts[i].cross(pts[(i + 1) % n])
    return 0.5 * s


class ConvexPolygon:
    """Strictly convex polygon with counterclockwise vertices.

    Build instances with :func:`make_polygon`; the constructor assumes the
    vertices are already validated.
    """

    __slots__ = ("vertices", "sides", "area")

    def __init__(self, vertices: Sequence[Point2]) -> None:
        self.vertices: Tuple[Point2, ...] = tuple(vertices)
        n = len(self.vertices)
        self.sides: Tuple[OrientedLine, ...] = tuple(
            OrientedLine.through(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)
        )
        self.area: float = _signed_area(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        pts = ", ".join(f"({p.x:g}, {p.y:g})" for p in self.vertices)
        return f"{type(self).__name__}([{pts}])"

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def side(self, i: int) -> OrientedLine:
        return self.sides[i % len(self.sides)]

    def edge(self, i: int) -> Tuple[Point2, Point2]:
        n = len(self.vertices)
        return self.vertices[i % n], self.vertices[(i + 1) % n]

    def side_length(self, i: int) -> float:
        p, q = self.edge(i)
        return distance(p, q)

    def side_lengths(self) -> Tuple[float, ...]:
        return tuple(self.side_length(i) for i in range(len(self)))

    def bounds(self) -> Tuple[float, float, float, float]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, p: PointLike, boundary_tol: float = EPS_GEOM) -> Containment:
        return contains(self, p, boundary_tol)


class Triangle(ConvexPolygon):
    __slots__ = ()

    def altitude(self, i: int) -> float:
        """Altitude onto side ``i`` (the edge from vertex ``i`` to vertex ``i+1``)."""
        return 2.0 * self.area / self.side_length(i)

    def altitudes(self) -> Tuple[float, float, float]:
        return altitudes(self)

    def is_equilateral(self, rtol: float = 1e-9) -> bool:
        lengths = self.side_lengths()
        return max(lengths) - min(lengths) <= rtol * max(lengths)


def make_polygon(points: Sequence[PointLike], eps: float = EPS_GEOM) -> ConvexPolygon:
    """Validate ``points`` as a strictly convex polygon, reordering to CCW if needed.

    Raises:
        DegenerateInput: fewer than three points, repeated or collinear vertices.
        NotConvex: reflex corners or self-intersecting winding.
    """
    pts = [as_point(p) for p in points]
    n = len(pts)
    if n < 3:
        raise DegenerateInput(f"a polygon needs at least 3 vertices, got {n}")
    for i in range(n):
        for j in range(i + 1, n):
            if distance(pts[i], pts[j]) <= eps:
                raise DegenerateInput(f"repeated vertex {pts[i]}")
    area = _signed_area(pts)
    if abs(area) <= eps:
        raise DegenerateInput("vertices span no area")
    if area < 0:
        pts.reverse()

    crosses = []
    for i in range(n):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
        crosses.append((b - a).cross(c - b))
    if any(cr < -eps for cr in crosses):
        raise NotConvex("polygon has a reflex corner")
    if any(cr <= eps for cr in crosses):
        raise DegenerateInput("three consecutive vertices are collinear")
    # Left turns everywhere still admit star-shaped windings; total turning must be 2*pi.
    turning = 0.0
    for i in range(n):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
        u, v = b - a, c - b
        turning += math.atan2(u.cross(v), u.dot(v))
    if abs(turning - 2.0 * math.pi) > 1e-6:
        raise NotConvex("polygon winds more than once")

    cls = Triangle if n == 3 else ConvexPolygon
    return cls(pts)


def make_triangle(points: Sequence[PointLike], eps: float = EPS_GEOM) -> Triangle:
    if len(points) != 3:
        raise DegenerateInput(f"a triangle needs exactly 3 vertices, got {len(points)}")
    tri = make_polygon(points, eps)
    assert isinstance(tri, Triangle)
    return tri


def contains(poly: ConvexPolygon, p: PointLike, boundary_tol: float = EPS_GEOM) -> Containment:
    p = as_point(p)
    dists = [side.signed_distance(p) for side in poly.sides]
    if max(dists) > boundary_tol:
        return Containment.OUTSIDE
    if all(d < -boundary_tol for d in dists):
        return Containment.INSIDE
    return Containment.BOUNDARY


def altitudes(tri: Triangle) -> Tuple[float, float, float]:
    """Altitudes onto each side, in side order."""
    return tuple(tri.altitude(i) for i in range(3))  # type: ignore[return-value]


def clip_line(poly: ConvexPolygon, line: Line, eps: float = EPS_GEOM) -> Tuple[Point2, ...]:
    """Intersect an infinite line with the closed polygon.

    Returns an empty tuple, a single point (the line supports the polygon at a
    vertex) or the two segment endpoints ordered along ``line.direction``.
    """
    d = line.direction.scaled(1.0 / line.direction.norm())
    p0 = line.point
    t_lo, t_hi = -math.inf, math.inf
    for side in poly.sides:
        n = Point2(*side.normal)
        rate = n.dot(d)
        start = side.signed_distance(p0)
        if abs(rate) <= 1e-15:
            if start > eps:
                return ()
            continue
        t = -start / rate
        if rate > 0:
            t_hi = min(t_hi, t)
        else:
            t_lo = max(t_lo, t)
    if t_lo > t_hi + eps:
        return ()
    a = Point2(p0.x + t_lo * d.x, p0.y + t_lo * d.y)
    if t_hi - t_lo <= eps:
        return (a,)
    b = Point2(p0.x + t_hi * d.x, p0.y + t_hi * d.y)
    return (a, b)
