"""Minimum-area all-flush triangles of convex polygons.

The minimum all-flush triangle (MFT) of a convex polygon is the smallest
triangle whose three sides each contain a polygon edge. This package
computes it in linear time with a rotate-and-kill sweep, provides an
O(log n)-per-step alternative criterion, quadratic and cubic oracles for
cross-checking, a random-instance generator, and a CLI.
"""

from .errors import (
    CollinearVertices,
    CommonTangentInvalid,
    DMonotonicityViolated,
    FlushTriError,
    GenerationFailed,
    GeometryError,
    InfiniteTriangle,
    InstanceTooLarge,
    InvalidEdgePair,
    NoCommonTangent,
    NonMonotoneDirection,
    NotChasing,
    NotClockwiseTriple,
    NotConvex,
    ParallelEdges,
    ParallelLines,
    PolygonError,
    SameEdge,
    SolverInvariantError,
    TooFewVertices,
    ZeroVector,
)
from .geometry import DirectedLine, Point, Side, cw_angle, intersect_lines, side_of, signed_area
from .hyperbola import (
    Classification,
    HyperbolaBranch,
    branch,
    classify,
    common_tangent,
    common_tangents,
    corner_branch,
    tangent_with_direction,
)
from .polygon import ConvexPolygon, SupportPointer, generate_random, support_line, validate
from .solver import (
    BruteForceResult,
    Candidate,
    SolverReport,
    SolveStats,
    StableBounds,
    brute_force,
    initial_3stable,
    quadratic_scan,
    rotate_and_kill,
    solve_mft,
    stable_bounds,
)
from .triangles import (
    ExtArea,
    FlushTriangle,
    StabilityFlags,
    area_of_triple,
    corner_area,
    edge_back_stable,
    edge_forw_stable,
    edge_stability,
    is_3stable,
    is_interleaving,
    next_opt_apex,
    triangle_of,
)

__version__ = "0.1.0"

__all__ = [
    "BruteForceResult",
    "Candidate",
    "Classification",
    "CollinearVertices",
    "CommonTangentInvalid",
    "ConvexPolygon",
    "DMonotonicityViolated",
    "DirectedLine",
    "ExtArea",
    "FlushTriError",
    "FlushTriangle",
    "GenerationFailed",
    "GeometryError",
    "HyperbolaBranch",
    "InfiniteTriangle",
    "InstanceTooLarge",
    "InvalidEdgePair",
    "NoCommonTangent",
    "NonMonotoneDirection",
    "NotChasing",
    "NotClockwiseTriple",
    "NotConvex",
    "ParallelEdges",
    "ParallelLines",
    "Point",
    "PolygonError",
    "SameEdge",
    "Side",
    "SolveStats",
    "SolverInvariantError",
    "SolverReport",
    "StableBounds",
    "StabilityFlags",
    "SupportPointer",
    "TooFewVertices",
    "ZeroVector",
    "area_of_triple",
    "branch",
    "brute_force",
    "classify",
    "common_tangent",
    "common_tangents",
    "corner_area",
    "corner_branch",
    "cw_angle",
    "edge_back_stable",
    "edge_forw_stable",
    "edge_stability",
    "generate_random",
    "initial_3stable",
    "intersect_lines",
    "is_3stable",
    "is_interleaving",
    "next_opt_apex",
    "quadratic_scan",
    "rotate_and_kill",
    "side_of",
    "signed_area",
    "solve_mft",
    "stable_bounds",
    "support_line",
    "tangent_with_direction",
    "triangle_of",
    "validate",
]
