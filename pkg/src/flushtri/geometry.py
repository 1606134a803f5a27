"""Planar primitives: points, directed lines, signed areas, and the
clockwise direction-angle convention used throughout the package.

Every direction comparison in the solver goes through ``cw_angle`` so that
the clockwise convention lives in exactly one place: angles grow when a
vector rotates clockwise, with (1,0) -> 0, (0,-1) -> pi/2, (-1,0) -> pi.
"""

from __future__ import annotations

import math
from enum import IntEnum
from typing import NamedTuple

from .errors import ParallelLines, ZeroVector

TWO_PI = 2.0 * math.pi

# Tolerance policy (double precision floats):
#   EPS_PAR  - parallelism test on unit direction vectors
#   EPS_REL  - relative tolerance for area comparisons
# Absolute point/side tolerances are scaled by the instance diameter at the
# call site (polygon and solver pass 1e-9 * diameter).
EPS_PAR = 1e-12
EPS_REL = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class Side(IntEnum):
    LEFT = 1
    ON = 0
    RIGHT = -1


class DirectedLine(NamedTuple):
    """Line through ``anchor`` with unit direction ``(dx, dy)``.

    The left/right half-planes are defined by the sign of
    cross(dir, p - anchor): positive = left, negative = right.
    """

    anchor: Point
    dx: float
    dy: float


def unit(vx: float, vy: float) -> tuple[float, float]:
    norm = math.hypot(vx, vy)
    if norm < EPS_PAR:
        raise ZeroVector(f"cannot normalize ({vx}, {vy})")
    return vx / norm, vy / norm


def directed_line(anchor: Point | tuple[float, float], vx: float, vy: float) -> DirectedLine:
    dx, dy = unit(vx, vy)
    return DirectedLine(Point(*anchor), dx, dy)


def cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


def signed_area(p: Point, q: Point, r: Point) -> float:
    """Signed area of triangle pqr; positive when p,q,r turn counterclockwise."""
    return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def intersect_lines(l1: DirectedLine, l2: DirectedLine) -> Point:
    """Intersection point of two directed lines.

    Raises ParallelLines when the unit directions are parallel within EPS_PAR.
    """
    denom = cross(l1.dx, l1.dy, l2.dx, l2.dy)
    if abs(denom) < EPS_PAR:
        raise ParallelLines(f"directions ({l1.dx},{l1.dy}) and ({l2.dx},{l2.dy})")
    qx = l2.anchor[0] - l1.anchor[0]
    qy = l2.anchor[1] - l1.anchor[1]
    t = cross(qx, qy, l2.dx, l2.dy) / denom
    return Point(l1.anchor[0] + t * l1.dx, l1.anchor[1] + t * l1.dy)


def side_of(l: DirectedLine, p: Point | tuple[float, float], tol: float = 1e-9) -> Side:
    """Classify p against l: LEFT, ON (within tol) or RIGHT.

    ``tol`` is an absolute distance tolerance; callers working on a concrete
    instance should pass 1e-9 times the instance diameter.
    """
    c = cross(l.dx, l.dy, p[0] - l.anchor[0], p[1] - l.anchor[1])
    if c > tol:
        return Side.LEFT
    if c < -tol:
        return Side.RIGHT
    return Side.ON


def cw_angle(vx: float, vy: float) -> float:
    """Clockwise angle of a nonzero vector, in [0, 2*pi).

    Measured from the +x axis, increasing as the vector rotates clockwise:
    (1,0) -> 0, (0,-1) -> pi/2, (-1,0) -> pi, (0,1) -> 3*pi/2.
    """
    if vx == 0.0 and vy == 0.0:
        raise ZeroVector("cw_angle of zero vector")
    a = math.atan2(-vy, vx)
    if a < 0.0:
        a += TWO_PI
    elif a >= TWO_PI:
        a -= TWO_PI
    return a


def rotate_cw(vx: float, vy: float, theta: float) -> tuple[float, float]:
    """Rotate a vector clockwise by theta radians."""
    c = math.cos(theta)
    s = math.sin(theta)
    return vx * c + vy * s, -vx * s + vy * c


def cw_delta(frm: float, to: float) -> float:
    """Clockwise angular distance from angle ``frm`` to angle ``to``, in [0, 2*pi)."""
    d = (to - frm) % TWO_PI
    if d >= TWO_PI:
        d -= TWO_PI
    return d


def areas_close(a: float, b: float, rel: float = EPS_REL) -> bool:
    """True when two finite non-negative areas agree within relative tolerance."""
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)
