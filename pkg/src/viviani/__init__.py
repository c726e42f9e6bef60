"""Distance-sum and squared-distance-sum loci of triangles and convex polygons."""

from .errors import (
    CollinearSamples,
    DegenerateInput,
    GeometryError,
    InvalidEllipse,
    NonPositiveParameter,
    NotConvex,
    NotDefinite,
    PointOutside,
    PointOutsideGrid,
    SceneError,
    WitnessOutside,
)
from .geometry import (
    Containment,
    ConvexPolygon,
    Line,
    OrientedLine,
    Point2,
    Triangle,
    altitudes,
    clip_line,
    contains,
    make_polygon,
    make_triangle,
    signed_distance,
)
from .inverse import EllipseCanonical, IsoscelesParams, is_circle_case, k_constant, triangle_for_ellipse
from .linear import (
    AffineDistanceSum,
    ConstancyVerdict,
    Habitat,
    HabitatKind,
    distance_sum_functional,
    infer_constancy,
    level_segment,
    parallel_decomposition,
    reconstruct_equilateral_from_base,
    value_range,
)
from .oracle import FieldSample, contour_residual, sample_linear_field, sample_quadratic_field
from .quadratic import (
    ConicClass,
    ConicCoefficients,
    ConicGeometry,
    QuadraticDistanceSum,
    classify,
    intersect_line_conic,
    locus_conic,
    squared_distance_sum,
)

__version__ = "0.1.0"
