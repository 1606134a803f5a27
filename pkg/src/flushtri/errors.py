"""Exception hierarchy for the flushtri package."""


class FlushTriError(Exception):
    """Base class for all package errors."""


class GeometryError(FlushTriError):
    """Invalid input to a planar primitive."""


class ParallelLines(GeometryError):
    """Two lines are parallel within tolerance and do not intersect."""


class ZeroVector(GeometryError):
    """A direction vector has (near-)zero length."""


class PolygonError(FlushTriError):
    """The input polygon violates a structural assumption."""


class TooFewVertices(PolygonError):
    pass


class NotConvex(PolygonError):
    pass


class CollinearVertices(PolygonError):
    pass


class ParallelEdges(PolygonError):
    pass


class SameEdge(FlushTriError):
    """An edge pair predicate was called with identical edges."""


class NotClockwiseTriple(FlushTriError):
    """Edge indices do not form a distinct clockwise triple."""


class InvalidEdgePair(FlushTriError):
    """A quadrant cut was requested for an edge bounding the quadrant."""


class InfiniteTriangle(FlushTriError):
    """Full stability is only defined for triangles with finite area."""


class NotChasing(FlushTriError):
    """An operation required the chasing relation to hold for a pair."""


class NoTangentWithDirection(FlushTriError):
    """No tangent of the hyperbola branch has the requested direction."""


class NoCommonTangent(FlushTriError):
    """No common tangent of two branches satisfies the selection rule."""


class HyperbolaPreconditionViolated(FlushTriError):
    """A corner hyperbola was requested for edges violating its chasing
    or adjacency preconditions."""


class GenerationFailed(FlushTriError):
    """Random polygon generation did not validate within the retry budget."""


class NonMonotoneDirection(FlushTriError):
    """A support pointer was queried with a decreasing direction offset."""


class InstanceTooLarge(FlushTriError):
    """Instance exceeds the size cap of a brute-force algorithm."""


class SolverInvariantError(FlushTriError):
    """A structural invariant of the sweep was violated at runtime."""


class DMonotonicityViolated(SolverInvariantError):
    """The selected comparison direction decreased between iterations."""


class CommonTangentInvalid(SolverInvariantError):
    """A common tangent failed its tangency or selection self-checks."""
