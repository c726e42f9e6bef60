"""Minimal deterministic SVG writer with a math-up coordinate system."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape, quoteattr

from .geometry import Point2, PointLike, as_point


def fmt(x: float, digits: int = 12) -> str:
    """Locale-independent fixed significant-digit formatting; never prints ``-0``."""
    s = format(float(x), f".{digits}g")
    return "0" if s in ("-0", "0") else s


class Figure:
    """Collects primitives in world coordinates and emits one SVG document.

    The y axis is flipped so larger world ``y`` draws higher; the view box is
    the bounding box of everything drawn, padded by ``margin`` of its extent.
    """

    def __init__(self, size: float = 600.0, margin: float = 0.1) -> None:
        self.size = size
        self.margin = margin
        self._items: List[Tuple[str, tuple, dict]] = []
        self._extent: List[Point2] = []

    def _track(self, pts: Sequence[PointLike]) -> List[Point2]:
        pts = [as_point(p) for p in pts]
        self._extent.extend(pts)
        return pts

    def polygon(self, pts: Sequence[PointLike], **style) -> None:
        self._items.append(("polygon", tuple(self._track(pts)), style))

    def polyline(self, pts: Sequence[PointLike], closed: bool = False, **style) -> None:
        kind = "closed" if closed else "open"
        self._items.append((kind, tuple(self._track(pts)), style))

    def segment(self, p: PointLike, q: PointLike, **style) -> None:
        self._items.append(("line", tuple(self._track([p, q])), style))

    def dot(self, p: PointLike, **style) -> None:
        self._items.append(("dot", tuple(self._track([p])), style))

    def label(self, p: PointLike, text: str, **style) -> None:
        self._items.append(("text", tuple(self._track([p])), dict(style, text=text)))

    def _view(self) -> Tuple[float, float, float, float]:
        if not self._extent:
            return -1.0, -1.0, 2.0, 2.0
        xs = [p.x for p in self._extent]
        ys = [-p.y for p in self._extent]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
        pad = self.margin * max(w, h)
        return x0 - pad, y0 - pad, w + 2 * pad, h + 2 * pad

    def render(self, title: Optional[str] = None) -> str:
        vx, vy, vw, vh = self._view()
        scale = self.size / max(vw, vh)
        width, height = vw * scale, vh * scale
        unit = max(vw, vh)
        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width, 6)}" '
            f'height="{fmt(height, 6)}" viewBox="{fmt(vx)} {fmt(vy)} {fmt(vw)} {fmt(vh)}">',
        ]
        if title:
            out.append(f"<title>{escape(title)}</title>")
        for kind, pts, style in self._items:
            out.append(self._element(kind, pts, dict(style), unit))
        out.append("</svg>")
        return "\n".join(out) + "\n"

    @staticmethod
    def _coords(pts: Sequence[Point2]) -> str:
        return " ".join(f"{fmt(p.x)},{fmt(-p.y)}" for p in pts)

    def _element(self, kind: str, pts: Sequence[Point2], style: dict, unit: float) -> str:
        stroke = style.pop("stroke", "black")
        width = style.pop("width", 2.0)
        dash = style.pop("dash", None)
        fill = style.pop("fill", "none")
        common = f'stroke={quoteattr(stroke)} stroke-width="{fmt(width, 6)}" vector-effect="non-scaling-stroke"'
        if dash:
            common += f' stroke-dasharray="{dash}"'
        if kind == "polygon" or kind == "closed":
            return f'<polygon points="{self._coords(pts)}" fill={quoteattr(fill)} {common}/>'
        if kind == "open":
            return f'<polyline points="{self._coords(pts)}" fill="none" {common}/>'
        if kind == "line":
            a, b = pts
            return (
                f'<line x1="{fmt(a.x)}" y1="{fmt(-a.y)}" x2="{fmt(b.x)}" y2="{fmt(-b.y)}" {common}/>'
            )
        if kind == "dot":
            (p,) = pts
            r = style.pop("radius", 0.008) * unit
            return f'<circle cx="{fmt(p.x)}" cy="{fmt(-p.y)}" r="{fmt(r)}" fill={quoteattr(stroke)}/>'
        if kind == "text":
            (p,) = pts
            size = style.pop("font", 0.035) * unit
            return (
                f'<text x="{fmt(p.x)}" y="{fmt(-p.y)}" font-size="{fmt(size)}" '
                f'font-family="sans-serif" fill={quoteattr(stroke)}>{escape(style["text"])}</text>'
            )
        raise ValueError(f"unknown element kind {kind!r}")
