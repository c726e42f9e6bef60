"""Exception hierarchy shared by every module of the package."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateInput(GeometryError):
    """Collinear, repeated or otherwise zero-area vertices."""


class NotConvex(GeometryError):
    """Vertices do not form a strictly convex polygon."""


class CollinearSamples(GeometryError):
    """Three sample points that span no area."""


class PointOutside(GeometryError):
    """A query point lies outside the polygon."""


class WitnessOutside(GeometryError):
    """Witness points fit in neither candidate equilateral triangle."""


class NotDefinite(GeometryError):
    """Conic whose quadratic part is not positive definite."""


class NonPositiveParameter(GeometryError):
    """A length parameter that must be strictly positive is not."""


class InvalidEllipse(GeometryError):
    """Canonical ellipse with alpha2 < beta2 or non-positive axes."""


class PointOutsideGrid(GeometryError):
    """Interpolation requested outside a sampled field."""


class SceneError(ValueError):
    """Malformed scene file."""
