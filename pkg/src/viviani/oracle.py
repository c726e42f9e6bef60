"""Brute-force field sampling used to check the closed-form loci.

Fields are built straight from vertex coordinates with the two-point
distance formula, without touching the affine or quadratic functionals, so
agreement between the two is real evidence.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import PointOutsideGrid
from .geometry import ConvexPolygon, Point2, PointLike, Triangle, as_point

Bounds = Tuple[float, float, float, float]


@dataclass(frozen=True)
class FieldSample:
    """Values on the node grid ``origin + (j * cell, i * cell)``, row ``i``, column ``j``."""

    origin: Point2
    cell: float
    values: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    def node(self, i: int, j: int) -> Point2:
        return Point2(self.origin.x + j * self.cell, self.origin.y + i * self.cell)

    def node_coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        rows, cols = self.values.shape
        xs = self.origin.x + self.cell * np.arange(cols)
        ys = self.origin.y + self.cell * np.arange(rows)
        return np.meshgrid(xs, ys)

    def interpolate(self, p: PointLike) -> float:
        """Bilinear interpolation at ``p``."""
        p = as_point(p)
        rows, cols = self.values.shape
        u = (p.x - self.origin.x) / self.cell
        v = (p.y - self.origin.y) / self.cell
        if not (0.0 <= u <= cols - 1 and 0.0 <= v <= rows - 1):
            raise PointOutsideGrid(f"{p} lies outside the sampled grid")
        j = min(int(math.floor(u)), cols - 2)
        i = min(int(math.floor(v)), rows - 2)
        fu, fv = u - j, v - i
        z = self.values
        return float(
            (1 - fu) * (1 - fv) * z[i, j]
            + fu * (1 - fv) * z[i, j + 1]
            + (1 - fu) * fv * z[i + 1, j]
            + fu * fv * z[i + 1, j + 1]
        )

    def to_csv(self) -> str:
        """Header ``origin_x, origin_y, cell, rows, cols`` then row-major values."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        rows, cols = self.values.shape
        w.writerow(["origin_x", "origin_y", "cell", "rows", "cols"])
        w.writerow([repr(self.origin.x), repr(self.origin.y), repr(self.cell), rows, cols])
        for row in self.values:
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "FieldSample":
        r = csv.reader(io.StringIO(text))
        next(r)
        ox, oy, cell, rows, cols = next(r)
        values = np.array([[float(v) for v in row] for row in r], dtype=float)
        if values.shape != (int(rows), int(cols)):
            raise ValueError(f"CSV body has shape {values.shape}, header says ({rows}, {cols})")
        return cls(Point2(float(ox), float(oy)), float(cell), values)


def _grid(bounds: Bounds, resolution: int) -> Tuple[Point2, float, int, int]:
    if resolution < 8:
        raise ValueError(f"resolution must be at least 8, got {resolution}")
    xmin, ymin, xmax, ymax = bounds
    cell = max(xmax - xmin, ymax - ymin) / resolution
    cols = int(math.ceil((xmax - xmin) / cell - 1e-9)) + 3
    rows = int(math.ceil((ymax - ymin) / cell - 1e-9)) + 3
    return Point2(xmin - cell, ymin - cell), cell, rows, cols


def _line_distances(vertices: Sequence[Point2], x: np.ndarray, y: np.ndarray) -> list:
    """Unsigned distances from every node to each side line, from raw vertex pairs."""
    out = []
    n = len(vertices)
    for k in range(n):
        p, q = vertices[k], vertices[(k + 1) % n]
        dx, dy = q.x - p.x, q.y - p.y
        out.append(np.abs(dx * (p.y - y) - (p.x - x) * dy) / math.hypot(dx, dy))
    return out


def _sample(
    vertices: Sequence[Point2],
    bounds: Bounds,
    resolution: int,
    combine: Callable[[list], np.ndarray],
    workers: int,
) -> FieldSample:
    origin, cell, rows, cols = _grid(bounds, resolution)
    xs = origin.x + cell * np.arange(cols)
    values = np.empty((rows, cols), dtype=float)

    def fill(i: int) -> None:
        y = np.full(cols, origin.y + cell * i)
        values[i] = combine(_line_distances(vertices, xs, y))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, range(rows)))
    else:
        for i in range(rows):
            fill(i)
    return FieldSample(origin, cell, values)


def sample_linear_field(
    poly: ConvexPolygon, resolution: int, bounds: Optional[Bounds] = None, workers: int = 1
) -> FieldSample:
    """Sum of unsigned side distances on a grid over the polygon's bounding box."""
    return _sample(poly.vertices, bounds or poly.bounds(), resolution, lambda ds: sum(ds), workers)


def sample_quadratic_field(
    tri: Triangle, resolution: int, bounds: Optional[Bounds] = None, workers: int = 1
) -> FieldSample:
    """Sum of squared side distances; pass ``bounds`` to cover a whole locus ellipse."""
    return _sample(
        tri.vertices, bounds or tri.bounds(), resolution, lambda ds: sum(d * d for d in ds), workers
    )


def contour_residual(field: FieldSample, predicted: Iterable[PointLike], level: float) -> float:
    """Largest ``|interpolated field - level|`` over the predicted contour points."""
    worst = 0.0
    for p in predicted:
        worst = max(worst, abs(field.interpolate(p) - level))
    return worst


def covering_bounds(points: Iterable[PointLike], pad: float = 0.0) -> Bounds:
    pts = [as_point(p) for p in points]
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad
