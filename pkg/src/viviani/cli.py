"""Command-line interface: ``viviani {habitat,locus,inverse,verify} --scene FILE``.

Exit codes: 0 success (an empty habitat is a valid answer), 1 verification
failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import SceneError
from .geometry import ConvexPolygon, Point2, Triangle, contains, make_polygon
from .inverse import EllipseCanonical, is_circle_case, triangle_for_ellipse
from .linear import (
    Habitat,
    HabitatKind,
    distance_sum_functional,
    level_segment,
    parallel_decomposition,
    value_range,
)
from .oracle import (
    contour_residual,
    covering_bounds,
    sample_linear_field,
    sample_quadratic_field,
)
from .quadratic import (
    ConicClass,
    ConicCoefficients,
    ConicGeometry,
    classify,
    intersect_line_conic,
    locus_conic,
    squared_distance_sum,
)
from .scene import Scene, parse_scene
from .svg import Figure, fmt

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INPUT = 0, 1, 2
RESIDUAL_TOL = 1e-3


class Report:
    def __init__(self) -> None:
        self.lines: List[str] = []

    def add(self, key: str, *values) -> None:
        parts = [fmt(v) if isinstance(v, float) else str(v) for v in values]
        self.lines.append(f"{key}: {' '.join(parts)}" if parts else f"{key}:")

    def point(self, key: str, p: Point2, *extra) -> None:
        self.add(key, p.x, p.y, *extra)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _polygon(scene: Scene) -> ConvexPolygon:
    if not scene.vertices:
        raise SceneError("scene has no vertices")
    return make_polygon(scene.vertices)


def _triangle(scene: Scene) -> Triangle:
    poly = _polygon(scene)
    if not isinstance(poly, Triangle):
        raise SceneError(f"this task needs a triangle, scene has {len(poly)} vertices")
    return poly


def _require(value, name: str):
    if value is None:
        raise SceneError(f"scene is missing {name}")
    return value


def _ellipse(scene: Scene) -> EllipseCanonical:
    a2, b2 = _require(scene.ellipse, "ellipse")
    return EllipseCanonical(a2, b2)


def _draw_polygon(fig: Figure, poly: ConvexPolygon) -> None:
    fig.polygon(poly.vertices, fill="#f4f4f4")
    cx = sum(p.x for p in poly.vertices) / len(poly)
    cy = sum(p.y for p in poly.vertices) / len(poly)
    for i, p in enumerate(poly.vertices):
        d = Point2(p.x - cx, p.y - cy)
        n = d.norm() or 1.0
        at = Point2(p.x + 0.08 * d.x / n * max(1.0, n), p.y + 0.08 * d.y / n * max(1.0, n))
        fig.label(at, chr(ord("A") + i) if i < 26 else str(i))


def _draw_legs(fig: Figure, poly: ConvexPolygon, head: Point2) -> None:
    fig.dot(head, stroke="#b00020")
    for side in poly.sides:
        fig.segment(head, side.foot(head), stroke="#b00020", width=1.0, dash="4 3")


def _draw_habitat(fig: Figure, poly: ConvexPolygon, habitat: Habitat, decorate: bool) -> None:
    if habitat.kind is HabitatKind.EVERYWHERE:
        fig.polygon(poly.vertices, fill="#cfe8cf", stroke="#2e7d32")
        head = Point2(
            sum(p.x for p in poly.vertices) / len(poly), sum(p.y for p in poly.vertices) / len(poly)
        )
    elif habitat.kind is HabitatKind.SEGMENT:
        a, b = habitat.points
        fig.segment(a, b, stroke="#1565c0", width=3.0)
        head = Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    elif habitat.kind is HabitatKind.POINT:
        head = habitat.points[0]
        fig.dot(head, stroke="#1565c0")
    else:
        return
    if decorate:
        _draw_legs(fig, poly, head)


def _draw_levels(fig: Figure, poly: ConvexPolygon, levels: int) -> None:
    for h in parallel_decomposition(poly, levels):
        if h.kind is HabitatKind.SEGMENT:
            fig.segment(*h.points, stroke="#9e9e9e", width=1.0)


def _report_habitat(rep: Report, poly: ConvexPolygon, leg_sum: float) -> Habitat:
    v = distance_sum_functional(poly)
    lo, hi = value_range(poly)
    rep.add("functional", "gradient", v.gradient[0], v.gradient[1], "constant", v.constant)
    rep.add("value_range", lo, hi)
    rep.add("leg_sum", leg_sum)
    habitat = level_segment(poly, leg_sum)
    rep.add("habitat", habitat.kind.value)
    for p in habitat.points:
        rep.point("point", p)
    if habitat.direction is not None:
        rep.point("direction", habitat.direction)
    return habitat


def _report_vertices(rep: Report, poly: ConvexPolygon) -> None:
    rep.add("vertices", len(poly))
    for p in poly.vertices:
        rep.point("vertex", p)


def cmd_habitat(scene: Scene, levels: int = 0, decorate: bool = False) -> Tuple[str, Figure]:
    poly = _polygon(scene)
    leg_sum = _require(scene.leg_sum, "leg_sum")
    rep = Report()
    rep.add("task", "habitat")
    _report_vertices(rep, poly)
    habitat = _report_habitat(rep, poly, leg_sum)
    if levels:
        for h in parallel_decomposition(poly, levels):
            rep.add("level", h.level, h.kind.value, *[c for p in h.points for c in p])

    fig = Figure(scene.size, scene.margin)
    _draw_polygon(fig, poly)
    if levels:
        _draw_levels(fig, poly, levels)
    _draw_habitat(fig, poly, habitat, decorate or scene.decorate)
    return rep.text(), fig


def _report_conic(rep: Report, conic: ConicCoefficients) -> ConicGeometry:
    geo = classify(conic)
    rep.add("conic", *conic.as_tuple())
    rep.add("discriminant", conic.discriminant)
    rep.add("class", geo.kind.value)
    rep.point("center", geo.center)
    rep.add("semi_major", geo.semi_major)
    rep.add("semi_minor", geo.semi_minor)
    rep.add("rotation", geo.rotation)
    return geo


def _draw_conic(fig: Figure, geo: ConicGeometry) -> None:
    if geo.kind in (ConicClass.ELLIPSE, ConicClass.CIRCLE):
        fig.polyline(geo.sample(256), closed=True, stroke="#6a1b9a")
    elif geo.kind is ConicClass.POINT:
        fig.dot(geo.center, stroke="#6a1b9a")


def cmd_locus(scene: Scene, levels: int = 0, decorate: bool = False) -> Tuple[str, Figure]:
    tri = _triangle(scene)
    k = _require(scene.squares_sum, "squares_sum")
    rep = Report()
    rep.add("task", "locus")
    _report_vertices(rep, tri)
    rep.add("squares_sum", k)
    rep.add("min_squares_sum", squared_distance_sum(tri).minimum())
    geo = _report_conic(rep, locus_conic(tri, k))

    fig = Figure(scene.size, scene.margin)
    _draw_polygon(fig, tri)
    if levels:
        _draw_levels(fig, tri, levels)
    _draw_conic(fig, geo)
    decorate = decorate or scene.decorate
    if decorate and geo.kind in (ConicClass.ELLIPSE, ConicClass.CIRCLE):
        _draw_legs(fig, tri, geo.point_at(0.0))

    if scene.leg_sum is not None:
        habitat = _report_habitat(rep, tri, scene.leg_sum)
        _draw_habitat(fig, tri, habitat, False)
        v = distance_sum_functional(tri)
        meets: Sequence[Point2] = ()
        if not v.is_constant():
            meets = intersect_line_conic(locus_conic(tri, k), v.level_line(scene.leg_sum))
        rep.add("meeting_points", len(meets))
        for p in meets:
            rep.point("meeting_point", p, contains(tri, p).value)
            fig.dot(p, stroke="#e65100")
    return rep.text(), fig


def cmd_inverse(scene: Scene, levels: int = 0, decorate: bool = False) -> Tuple[str, Figure]:
    e = _ellipse(scene)
    params, tri = triangle_for_ellipse(e)
    rep = Report()
    rep.add("task", "inverse")
    rep.add("ellipse", e.alpha2, e.beta2)
    rep.add("a", params.a)
    rep.add("b", params.b)
    rep.add("k", params.k)
    rep.add("vertical_shift", params.vertical_shift)
    _report_vertices(rep, tri)
    rep.add("equilateral", str(is_circle_case(tri)).lower())
    geo = _report_conic(rep, locus_conic(tri, params.k))

    fig = Figure(scene.size, scene.margin)
    _draw_polygon(fig, tri)
    _draw_conic(fig, geo)
    if decorate or scene.decorate:
        _draw_legs(fig, tri, geo.point_at(0.0))
    return rep.text(), fig


def _check(rep: Report, name: str, residual: float, tol: float) -> bool:
    ok = residual <= tol
    rep.add("check", name, "pass" if ok else "fail", "residual", residual, "tol", tol)
    return ok


def _conic_check(
    rep: Report, name: str, tri: Triangle, k: float, resolution: int, perturb_a: float
) -> bool:
    conic = locus_conic(tri, k)
    if perturb_a:
        conic = ConicCoefficients(conic.A + perturb_a, *conic.as_tuple()[1:])
    geo = classify(conic)
    pts = geo.sample(64)
    if not pts:
        rep.add("check", name, "skip", "class", geo.kind.value)
        return True
    field = sample_quadratic_field(tri, resolution, covering_bounds(pts + list(tri.vertices), 0.05))
    return _check(rep, name, contour_residual(field, pts, k), RESIDUAL_TOL)


def cmd_verify(scene: Scene, resolution: int = 512, perturb_a: float = 0.0) -> Tuple[str, bool]:
    """Compare closed-form answers against brute-force sampled fields."""
    rep = Report()
    rep.add("task", "verify")
    rep.add("resolution", resolution)
    results: List[bool] = []

    if scene.vertices:
        poly = _polygon(scene)
        v = distance_sum_functional(poly)
        field = sample_linear_field(poly, resolution)
        xs, ys = field.node_coordinates()
        closed_form = v.gradient[0] * xs + v.gradient[1] * ys + v.constant
        inside = np.ones(xs.shape, dtype=bool)
        for side in poly.sides:
            inside &= side.normal[0] * xs + side.normal[1] * ys - side.offset <= 1e-9
        rel = np.abs(field.values - closed_form) / np.maximum(1.0, np.abs(field.values))
        results.append(_check(rep, "linear_nodes", float(rel[inside].max()), 1e-12))
        if v.is_constant():
            rep.add("viviani_constant", v.constant)
        if scene.leg_sum is not None:
            h = level_segment(poly, scene.leg_sum)
            if h.kind is HabitatKind.SEGMENT:
                # The unsigned sum has a kink on the boundary; only cells fully inside are checked.
                a, b = h.points
                clearance = -math.sqrt(2.0) * field.cell
                pts = [
                    p
                    for p in (Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)) for t in (i / 63 for i in range(64)))
                    if all(side.signed_distance(p) <= clearance for side in poly.sides)
                ]
                results.append(_check(rep, "level_segment", contour_residual(field, pts, h.level), RESIDUAL_TOL))
            else:
                rep.add("check", "level_segment", "skip", "habitat", h.kind.value)
        if scene.squares_sum is not None and isinstance(poly, Triangle):
            results.append(
                _conic_check(rep, "locus_conic", poly, scene.squares_sum, resolution, perturb_a)
            )

    if scene.ellipse is not None:
        e = _ellipse(scene)
        params, tri = triangle_for_ellipse(e)
        target = [
            Point2(math.sqrt(e.alpha2) * math.cos(t), math.sqrt(e.beta2) * math.sin(t))
            for t in (2 * math.pi * i / 64 for i in range(64))
        ]
        field = sample_quadratic_field(tri, resolution, covering_bounds(target + list(tri.vertices), 0.05))
        results.append(_check(rep, "inverse_ellipse", contour_residual(field, target, params.k), RESIDUAL_TOL))
        results.append(_conic_check(rep, "inverse_conic", tri, params.k, resolution, perturb_a))

    if not results:
        raise SceneError("scene has nothing to verify")
    ok = all(results)
    rep.add("verify", "pass" if ok else "fail")
    return rep.text(), ok


def _read_scene(path: str) -> Scene:
    if path == "-":
        return parse_scene(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="viviani", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("habitat", "level set of the distance sum for a given leg sum"),
        ("locus", "conic of constant squared distance sum"),
        ("inverse", "isosceles triangle realizing a canonical ellipse"),
        ("verify", "check closed-form answers against sampled fields"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scene", required=True, help="scene file, or '-' for stdin")
        p.add_argument("--svg", help="write a figure to this path")
        p.add_argument("--resolution", type=int, default=512, help="oracle grid resolution")
        p.add_argument("--decorate", action="store_true", help="draw perpendicular legs")
        p.add_argument("--levels", type=int, default=0, help="draw this many parallel level segments")
        if name == "verify":
            p.add_argument(
                "--perturb-a", type=float, default=0.0, help="add this to the conic A coefficient (fault injection)"
            )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.levels < 0:
            raise SceneError("--levels must be non-negative")
        scene = _read_scene(args.scene)
        if args.command == "verify":
            text, ok = cmd_verify(scene, args.resolution, args.perturb_a)
            sys.stdout.write(text)
            return EXIT_OK if ok else EXIT_VERIFY_FAILED
        command = {"habitat": cmd_habitat, "locus": cmd_locus, "inverse": cmd_inverse}[args.command]
        text, fig = command(scene, args.levels, args.decorate)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(text)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(fig.render(title=args.command))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
