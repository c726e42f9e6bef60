"""Sum of squared side distances of a triangle and its level conics."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Tuple

from .errors import DegenerateInput, NotDefinite
from .geometry import Line, Point2, PointLike, Triangle, as_point

TANGENCY_TOL = 1e-9
CIRCLE_RTOL = 1e-9


@dataclass(frozen=True)
class QuadraticDistanceSum:
    """``Q(P) = P^T M P + L . P + c0`` with ``M = [[m00, m01], [m01, m11]]``."""

    m00: float
    m01: float
    m11: float
    lx: float
    ly: float
    c0: float

    def __call__(self, p: PointLike) -> float:
        p = as_point(p)
        x, y = p.x, p.y
        return (
            self.m00 * x * x
            + 2.0 * self.m01 * x * y
            + self.m11 * y * y
            + self.lx * x
            + self.ly * y
            + self.c0
        )

    def minimizer(self) -> Point2:
        det = self.m00 * self.m11 - self.m01 * self.m01
        if det <= 0.0:
            raise NotDefinite("quadratic part is not positive definite")
        # grad Q = 2 M P + L = 0
        bx, by = -0.5 * self.lx, -0.5 * self.ly
        return Point2((self.m11 * bx - self.m01 * by) / det, (self.m00 * by - self.m01 * bx) / det)

    def minimum(self) -> float:
        c = self.minimizer()
        return self.c0 + 0.5 * (self.lx * c.x + self.ly * c.y)


@dataclass(frozen=True)
class ConicCoefficients:
    """``A x^2 + B x y + C y^2 + D x + E y + F = 0``."""

    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    def __post_init__(self) -> None:
        if self.A == 0.0 and self.B == 0.0 and self.C == 0.0:
            raise DegenerateInput("conic has no quadratic part")

    def __iter__(self):
        return iter(self.as_tuple())

    def as_tuple(self) -> Tuple[float, float, float, float, float, float]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def __call__(self, p: PointLike) -> float:
        p = as_point(p)
        x, y = p.x, p.y
        return self.A * x * x + self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F

    @property
    def discriminant(self) -> float:
        return self.B * self.B - 4.0 * self.A * self.C

    def canonical(self) -> "ConicCoefficients":
        """Rescaled so that ``A + C = 1`` (unchanged when the trace is zero)."""
        tr = self.A + self.C
        if tr == 0.0:
            return self
        return ConicCoefficients(*(v / tr for v in self.as_tuple()))


class ConicClass(enum.Enum):
    ELLIPSE = "ellipse"
    CIRCLE = "circle"
    POINT = "point"
    EMPTY = "empty"


@dataclass(frozen=True)
class ConicGeometry:
    """Center, semi-axes and major-axis angle of a definite conic.

    ``rotation`` lies in ``[0, pi)``. Semi-axes are zero for the point and
    empty classes.
    """

    kind: ConicClass
    center: Point2
    semi_major: float
    semi_minor: float
    rotation: float

    def point_at(self, t: float) -> Point2:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        u, v = self.semi_major * math.cos(t), self.semi_minor * math.sin(t)
        return Point2(self.center.x + c * u - s * v, self.center.y + s * u + c * v)

    def sample(self, n: int = 64) -> List[Point2]:
        if self.kind is ConicClass.EMPTY:
            return []
        if self.kind is ConicClass.POINT:
            return [self.center]
        return [self.point_at(2.0 * math.pi * i / n) for i in range(n)]


def squared_distance_sum(tri: Triangle) -> QuadraticDistanceSum:
    m00 = m01 = m11 = lx = ly = c0 = 0.0
    for side in tri.sides:
        nx, ny = side.normal
        o = side.offset
        # (n . P - o)^2 = P^T n n^T P - 2 o n . P + o^2
        m00 += nx * nx
        m01 += nx * ny
        m11 += ny * ny
        lx -= 2.0 * o * nx
        ly -= 2.0 * o * ny
        c0 += o * o
    return QuadraticDistanceSum(m00, m01, m11, lx, ly, c0)


def locus_conic(tri: Triangle, k: float) -> ConicCoefficients:
    """Conic ``Q(P) = k``, scaled so ``A + C = 1``."""
    q = squared_distance_sum(tri)
    return ConicCoefficients(q.m00, 2.0 * q.m01, q.m11, q.lx, q.ly, q.c0 - k).canonical()


def _sym_eigen(a: float, b: float, c: float) -> Tuple[float, float, float]:
    """Eigenvalues ``lo <= hi`` of ``[[a, b], [b, c]]`` and the angle of the ``lo`` eigenvector."""
    half_tr = 0.5 * (a + c)
    r = math.hypot(0.5 * (a - c), b)
    hi = half_tr + r
    # det / hi avoids cancellation in half_tr - r
    lo = (a * c - b * b) / hi if hi != 0.0 else half_tr - r
    angle = 0.5 * math.atan2(-2.0 * b, c - a)
    return lo, hi, angle


def classify(conic: ConicCoefficients) -> ConicGeometry:
    """Center, axes and class of a conic with positive-definite quadratic part.

    Raises:
        NotDefinite: when ``B^2 - 4AC >= 0``.
    """
    cc = conic.canonical()
    A, B, C, D, E, F = cc.as_tuple()
    if cc.discriminant >= 0.0 or A + C <= 0.0:
        raise NotDefinite(f"conic is not an ellipse (B^2-4AC = {conic.discriminant:g})")
    b = 0.5 * B
    det = A * C - b * b
    # 2 M p = -(D, E)
    cx = (-0.5 * D * C + 0.5 * E * b) / det
    cy = (-0.5 * E * A + 0.5 * D * b) / det
    center = Point2(cx, cy)
    f_center = F + 0.5 * (D * cx + E * cy)
    scale = abs(F) + abs(0.5 * D * cx) + abs(0.5 * E * cy)
    if abs(f_center) <= 1e-12 * max(scale, 1.0):
        return ConicGeometry(ConicClass.POINT, center, 0.0, 0.0, 0.0)
    if f_center > 0.0:
        return ConicGeometry(ConicClass.EMPTY, center, 0.0, 0.0, 0.0)

    lo, hi, angle = _sym_eigen(A, b, C)
    semi_major = math.sqrt(-f_center / lo)
    semi_minor = math.sqrt(-f_center / hi)
    if semi_major - semi_minor <= CIRCLE_RTOL * semi_major:
        return ConicGeometry(ConicClass.CIRCLE, center, semi_major, semi_minor, 0.0)
    rotation = angle % math.pi
    if math.pi - rotation < 1e-12:
        rotation = 0.0
    return ConicGeometry(ConicClass.ELLIPSE, center, semi_major, semi_minor, rotation)


def intersect_line_conic(
    conic: ConicCoefficients, line: Line, tol: float = TANGENCY_TOL
) -> Tuple[Point2, ...]:
    """Real intersections of a line with a conic, ordered along the line direction.

    A discriminant within ``tol`` of zero (after normalizing the parameter
    quadratic to a monic one with unit direction) counts as tangency.
    """
    cc = conic.canonical()
    A, B, C, D, E, F = cc.as_tuple()
    d = line.direction.scaled(1.0 / line.direction.norm())
    px, py = line.point.x, line.point.y
    dx, dy = d.x, d.y
    a2 = A * dx * dx + B * dx * dy + C * dy * dy
    a1 = 2.0 * A * px * dx + B * (px * dy + py * dx) + 2.0 * C * py * dy + D * dx + E * dy
    a0 = cc(line.point)

    if abs(a2) <= 1e-15:
        if abs(a1) <= 1e-15:
            return ()
        return (line.point + d.scaled(-a0 / a1),)

    p, q = a1 / a2, a0 / a2
    disc = p * p - 4.0 * q
    if abs(disc) <= tol * max(1.0, p * p):
        return (line.point + d.scaled(-0.5 * p),)
    if disc < 0.0:
        return ()
    root = math.sqrt(disc)
    big = -0.5 * (p + math.copysign(root, p))
    ts = sorted((big, q / big))
    return tuple(line.point + d.scaled(t) for t in ts)
