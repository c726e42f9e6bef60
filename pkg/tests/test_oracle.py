import math

import numpy as np
import pytest

from viviani.errors import PointOutsideGrid
from viviani.geometry import Containment, contains, make_polygon
from viviani.linear import distance_sum_functional, level_segment
from viviani.oracle import (
    FieldSample,
    contour_residual,
    covering_bounds,
    sample_linear_field,
    sample_quadratic_field,
)
from viviani.quadratic import classify, locus_conic, squared_distance_sum

from conftest import equilateral, random_convex_polygon, random_triangle


def _inside_nodes(field, poly):
    xs, ys = field.node_coordinates()
    for x, y, val in zip(xs.ravel(), ys.ravel(), field.values.ravel()):
        if contains(poly, (x, y)) is not Containment.OUTSIDE:
            yield (x, y), val


def test_grid_covers_bounding_box(right_triangle):
    f = sample_linear_field(right_triangle, 16)
    xs, ys = f.node_coordinates()
    assert xs.min() < 0 and xs.max() > 4
    assert ys.min() < 0 and ys.max() > 3
    assert f.cell == pytest.approx(4 / 16)
    assert np.isfinite(f.values).all()


def test_resolution_minimum(right_triangle):
    with pytest.raises(ValueError):
        sample_linear_field(right_triangle, 7)


def test_viviani_field_is_flat():
    tri = equilateral(4.0, angle=0.4, shift=(1, 2))
    f = sample_linear_field(tri, 64)
    vals = [val for _, val in _inside_nodes(f, tri)]
    assert len(vals) > 100
    np.testing.assert_allclose(vals, 2 * math.sqrt(3), rtol=1e-12)


def test_right_triangle_field_range(right_triangle):
    f = sample_linear_field(right_triangle, 64)
    vals = np.array([val for _, val in _inside_nodes(f, right_triangle)])
    assert vals.min() >= 12 / 5 - 1e-12 and vals.max() <= 4 + 1e-12


def test_linear_field_matches_functional(rng):
    for n in range(3, 9):
        poly = random_convex_polygon(rng, n)
        v = distance_sum_functional(poly)
        f = sample_linear_field(poly, 48)
        for p, val in _inside_nodes(f, poly):
            assert val == pytest.approx(v(p), rel=1e-12, abs=1e-12)


def test_quadratic_field_matches_form(rng):
    for _ in range(6):
        tri = random_triangle(rng)
        q = squared_distance_sum(tri)
        f = sample_quadratic_field(tri, 48)
        xs, ys = f.node_coordinates()
        for x, y, val in zip(xs.ravel(), ys.ravel(), f.values.ravel()):
            assert val == pytest.approx(q((x, y)), rel=1e-12, abs=1e-12)


def test_quadratic_field_at_origin(right_triangle):
    f = sample_quadratic_field(right_triangle, 16)
    # origin is node (1, 1) since the grid starts one cell out
    assert tuple(f.node(1, 1)) == pytest.approx((0, 0), abs=1e-15)
    assert f.values[1, 1] == pytest.approx(5.76, abs=1e-14)


def test_ellipse_residual_at_512(right_triangle):
    pts = classify(locus_conic(right_triangle, 5)).sample(64)
    f = sample_quadratic_field(right_triangle, 512, covering_bounds(pts, 0.1))
    assert contour_residual(f, pts, 5.0) <= 1e-3


def test_off_contour_point_is_flagged(right_triangle):
    f = sample_quadratic_field(right_triangle, 64, (-1, -1, 3, 3))
    assert contour_residual(f, [(0.72, 0.96)], 5.0) > 0.1


def test_interior_level_segment_residual(right_triangle):
    # points whose interpolation cell stays inside the triangle see the exact affine field
    f = sample_linear_field(right_triangle, 512)
    a, b = level_segment(right_triangle, 3.16743).points
    pts = [(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)) for t in np.linspace(0.05, 0.95, 32)]
    assert contour_residual(f, pts, 3.16743) <= 1e-12


def test_boundary_kink_error_is_first_order(right_triangle):
    # the unsigned sum bends at the boundary, so endpoint residuals shrink like the cell size
    h = level_segment(right_triangle, 3.16743)
    res = {}
    for r in (64, 128, 256, 512):
        f = sample_linear_field(right_triangle, r)
        res[r] = contour_residual(f, h.points, h.level)
        assert res[r] <= 4.0 * f.cell
    assert res[512] > 1e-3


def test_residuals_shrink_with_resolution(right_triangle):
    pts = classify(locus_conic(right_triangle, 5)).sample(64)
    bounds = covering_bounds(pts, 0.1)
    res = [contour_residual(sample_quadratic_field(right_triangle, r, bounds), pts, 5.0) for r in (64, 128, 256)]
    assert res[1] <= res[0] and res[2] <= res[1]

    h = level_segment(right_triangle, 3.16743)
    lin = [contour_residual(sample_linear_field(right_triangle, r), h.points, h.level) for r in (64, 128, 256)]
    assert lin[1] <= lin[0] and lin[2] <= lin[1]


def test_outside_grid_raises(right_triangle):
    f = sample_linear_field(right_triangle, 16)
    with pytest.raises(PointOutsideGrid):
        f.interpolate((100, 0))


def test_interpolation_exact_at_nodes(right_triangle):
    f = sample_quadratic_field(right_triangle, 16)
    for i, j in [(0, 0), (3, 5), (f.shape[0] - 1, f.shape[1] - 1)]:
        assert f.interpolate(f.node(i, j)) == pytest.approx(f.values[i, j], rel=1e-12)


def test_parallel_sampling_identical(rng):
    tri = random_triangle(rng)
    serial = sample_quadratic_field(tri, 128)
    threaded = sample_quadratic_field(tri, 128, workers=4)
    assert np.array_equal(serial.values, threaded.values)


def test_csv_round_trip(right_triangle):
    f = sample_linear_field(right_triangle, 10)
    text = f.to_csv()
    assert text.splitlines()[0] == "origin_x,origin_y,cell,rows,cols"
    g = FieldSample.from_csv(text)
    assert g.origin == f.origin and g.cell == f.cell
    assert np.array_equal(g.values, f.values)


def test_square_field():
    sq = make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    f = sample_linear_field(sq, 8)
    vals = [val for _, val in _inside_nodes(f, sq)]
    np.testing.assert_allclose(vals, 2.0, rtol=1e-12)
