import math

import numpy as np
import pytest
from hypothesis import reject
from hypothesis import strategies as st

from viviani.geometry import make_polygon, make_triangle

RIGHT_TRIANGLE = [(0.0, 0.0), (0.0, 3.0), (4.0, 0.0)]


def point_line_distance(p, a, b):
    """Unsigned distance from p to the line through a and b, straight from coordinates."""
    (x, y), (x1, y1), (x2, y2) = p, a, b
    return abs((x2 - x1) * (y1 - y) - (x1 - x) * (y2 - y1)) / math.hypot(x2 - x1, y2 - y1)


def brute_distance_sum(vertices, p, power=1):
    n = len(vertices)
    return sum(point_line_distance(p, vertices[i], vertices[(i + 1) % n]) ** power for i in range(n))


def equilateral(side, angle=0.0, shift=(0.0, 0.0)):
    c, s = math.cos(angle), math.sin(angle)
    base = [(0.0, 0.0), (side, 0.0), (side / 2, side * math.sqrt(3) / 2)]
    return make_triangle([(c * x - s * y + shift[0], s * x + c * y + shift[1]) for x, y in base])


def random_triangle(rng, min_angle=0.15):
    while True:
        pts = rng.uniform(-5, 5, size=(3, 2))
        ok = True
        for i in range(3):
            u = pts[(i + 1) % 3] - pts[i]
            v = pts[(i + 2) % 3] - pts[i]
            ang = math.acos(np.clip(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)), -1, 1))
            ok &= ang > min_angle
        if ok:
            return make_triangle([tuple(p) for p in pts])


def random_convex_polygon(rng, n):
    """Vertices on a random ellipse with angular gaps bounded away from zero."""
    while True:
        gaps = rng.uniform(0.3, 1.0, size=n)
        angles = np.cumsum(gaps / gaps.sum() * 2 * math.pi)
        if (gaps / gaps.sum() * 2 * math.pi).max() < math.pi * 0.95:
            break
    rx, ry = rng.uniform(0.5, 4, size=2)
    rot = rng.uniform(0, math.pi)
    cx, cy = rng.uniform(-3, 3, size=2)
    c, s = math.cos(rot), math.sin(rot)
    pts = [(cx + c * rx * math.cos(a) - s * ry * math.sin(a), cy + s * rx * math.cos(a) + c * ry * math.sin(a)) for a in angles]
    return make_polygon(pts)


def random_interior_point(rng, poly):
    """Random convex combination of the vertices, strictly inside."""
    w = rng.dirichlet(np.ones(len(poly))) * 0.98 + 0.02 / len(poly)
    return (float(sum(wi * p.x for wi, p in zip(w, poly.vertices))), float(sum(wi * p.y for wi, p in zip(w, poly.vertices))))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def right_triangle():
    return make_triangle(RIGHT_TRIANGLE)


coords = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def well_shaped_triangles(draw, min_angle=0.1):
    pts = draw(st.lists(st.tuples(coords, coords), min_size=3, max_size=3))
    a, b, c = (np.array(p) for p in pts)
    for u, v in ((b - a, c - a), (c - b, a - b), (a - c, b - c)):
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        if nu < 0.1 or nv < 0.1:
            reject()
        if math.acos(np.clip(u @ v / (nu * nv), -1, 1)) < min_angle:
            reject()
    return make_triangle(pts)


rigid_motions = st.tuples(st.floats(0, 2 * math.pi), coords, coords)


def apply_motion(motion, p):
    theta, tx, ty = motion
    c, s = math.cos(theta), math.sin(theta)
    x, y = p
    return (c * x - s * y + tx, s * x + c * y + ty)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
