"""Flat ``key = value`` scene files.

Example::

    # right triangle from the worked example
    vertex = 0 0
    vertex = 0 3
    vertex = 4 0
    leg_sum = 3.16743
    squares_sum = 5

Recognized keys: ``vertex`` (repeatable), ``leg_sum``, ``squares_sum``,
``ellipse`` (``alpha2 beta2``), and the render options ``size``, ``margin``
and ``decorate``. Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import SceneError
from .geometry import Point2

_SCALAR_KEYS = ("leg_sum", "squares_sum", "size", "margin")
_KNOWN_KEYS = ("vertex", "ellipse", "decorate") + _SCALAR_KEYS


@dataclass
class Scene:
    vertices: List[Point2] = field(default_factory=list)
    leg_sum: Optional[float] = None
    squares_sum: Optional[float] = None
    ellipse: Optional[Tuple[float, float]] = None
    size: float = 600.0
    margin: float = 0.1
    decorate: bool = False


def _number(text: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise SceneError(f"line {lineno}: {text!r} is not a number") from None
    if not math.isfinite(value):
        raise SceneError(f"line {lineno}: {text!r} is not finite")
    return value


def _numbers(text: str, count: int, lineno: int) -> List[float]:
    parts = text.split()
    if len(parts) != count:
        raise SceneError(f"line {lineno}: expected {count} numbers, got {len(parts)}")
    return [_number(p, lineno) for p in parts]


def parse_scene(text: str) -> Scene:
    scene = Scene()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SceneError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise SceneError(f"line {lineno}: unknown key {key!r}")
        if key != "vertex":
            if key in seen:
                raise SceneError(f"line {lineno}: duplicate key {key!r}")
            seen.add(key)

        if key == "vertex":
            x, y = _numbers(value, 2, lineno)
            scene.vertices.append(Point2(x, y))
        elif key == "ellipse":
            a2, b2 = _numbers(value, 2, lineno)
            scene.ellipse = (a2, b2)
        elif key == "decorate":
            if value.lower() not in ("true", "false", "yes", "no", "1", "0"):
                raise SceneError(f"line {lineno}: decorate must be a boolean")
            scene.decorate = value.lower() in ("true", "yes", "1")
        else:
            (num,) = _numbers(value, 1, lineno)
            setattr(scene, key, num)

    if scene.size <= 0:
        raise SceneError("size must be positive")
    if scene.margin < 0:
        raise SceneError("margin must be non-negative")
    return scene
