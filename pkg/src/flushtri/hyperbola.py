"""Hyperbola branches defined by two asymptote rays and a tangent-cut area.

A branch sits in the quadrant spanned by unit rays u, v from its apex; in
canonical coordinates (alpha, beta) with point = apex + alpha*u + beta*v it
is {alpha*beta = c, alpha > 0, beta > 0}. Every tangent line cuts a triangle
of the same area S from the quadrant, and S = 2*c*|cross(u, v)|. Comparing
that constant against the area a line cuts from the quadrant classifies the
line as disjoint, tangent or secant.

Common tangents of two branches are the roots of a quartic in the tangency
parameter of the first branch, solved in closed form with a direction
bisection as numerical fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import (
    CommonTangentInvalid,
    HyperbolaPreconditionViolated,
    NoCommonTangent,
    NoTangentWithDirection,
)
from .geometry import (
    EPS_PAR,
    EPS_REL,
    DirectedLine,
    Point,
    cw_angle,
    cw_delta,
    intersect_lines,
    rotate_cw,
)
from .polygon import ConvexPolygon
from .triangles import _chases, _corner_minus, _corner_plus

INF = math.inf


class Classification(Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    SECANT = "secant"


class HyperbolaBranch(NamedTuple):
    """Branch in the quadrant of rays (ux,uy), (vx,vy) from ``apex`` with
    tangent-cut triangle area S; c is the canonical coefficient."""

    apex: Point
    ux: float
    uy: float
    vx: float
    vy: float
    S: float
    c: float
    cross_uv: float


def branch(apex: tuple[float, float], u: tuple[float, float], v: tuple[float, float],
           S: float) -> HyperbolaBranch:
    cuv = u[0] * v[1] - u[1] * v[0]
    if abs(cuv) < EPS_PAR:
        raise HyperbolaPreconditionViolated("asymptote rays are parallel")
    if not S > 0.0:
        raise HyperbolaPreconditionViolated(f"triangle-area must be positive, got {S}")
    return HyperbolaBranch(
        apex=Point(*apex), ux=u[0], uy=u[1], vx=v[0], vy=v[1],
        S=S, c=S / (2.0 * abs(cuv)), cross_uv=cuv,
    )


def corner_branch(P: ConvexPolygon, k: int, j: int, sign: str) -> HyperbolaBranch:
    """Corner hyperbola at vertex k, asymptotic to the lines of edges k-1 and
    k, with tangent-cut area equal to the cut edge j makes in the opposite
    quadrant.

    sign '+': branch in the plus quadrant; requires edge j to chase edge k
    and j != k-1. sign '-': branch in the minus quadrant; requires edge k-1
    to chase edge j and j != k.
    """
    n = P.n
    k %= n
    j %= n
    km1 = (k - 1) % n
    if sign == "+":
        if j == km1 or j == k:
            raise HyperbolaPreconditionViolated(
                f"plus branch at vertex {k} undefined for edge {j}"
            )
        if not _chases(P, j, k):
            raise HyperbolaPreconditionViolated(
                f"edge {j} does not chase edge {k} (plus branch at vertex {k})"
            )
        S = _corner_minus(P, j, k)
        u = (P.dxs[km1], P.dys[km1])
        v = (P.dxs[k], P.dys[k])
    elif sign == "-":
        if j == k or j == km1:
            raise HyperbolaPreconditionViolated(
                f"minus branch at vertex {k} undefined for edge {j}"
            )
        if not _chases(P, km1, j):
            raise HyperbolaPreconditionViolated(
                f"edge {km1} does not chase edge {j} (minus branch at vertex {k})"
            )
        S = _corner_plus(P, j, k)
        u = (-P.dxs[km1], -P.dys[km1])
        v = (-P.dxs[k], -P.dys[k])
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if not (0.0 < S < INF):
        raise HyperbolaPreconditionViolated(
            f"degenerate tangent-cut area {S} at vertex {k} for edge {j}"
        )
    return branch((P.xs[k], P.ys[k]), u, v, S)


def cut_area(h: HyperbolaBranch, l: DirectedLine) -> float:
    """Area the line cuts from the branch quadrant toward the apex.

    +inf when the cut region is unbounded, including lines parallel to an
    asymptote.
    """
    cu = h.ux * l.dy - h.uy * l.dx
    cv = h.vx * l.dy - h.vy * l.dx
    if abs(cu) < EPS_PAR or abs(cv) < EPS_PAR:
        return INF
    ax = l.anchor[0] - h.apex[0]
    ay = l.anchor[1] - h.apex[1]
    w = ax * l.dy - ay * l.dx
    tu = w / cu
    tv = w / cv
    if tu <= 0.0 or tv <= 0.0:
        return INF
    return 0.5 * tu * tv * abs(h.cross_uv)


def classify(h: HyperbolaBranch, l: DirectedLine, rel: float = EPS_REL) -> Classification:
    """Disjoint / tangent / secant via the cut-area trichotomy."""
    area = cut_area(h, l)
    if area == INF:
        return Classification.SECANT
    if area < h.S * (1.0 - rel):
        return Classification.DISJOINT
    if area > h.S * (1.0 + rel):
        return Classification.SECANT
    return Classification.TANGENT


def tangent_with_direction(h: HyperbolaBranch, wx: float, wy: float) -> DirectedLine:
    """The unique tangent of the branch whose direction is (wx, wy).

    Exists exactly when the direction lies strictly between the asymptote
    directions (up to sign); the returned line is anchored at its tangency
    point.
    """
    norm = math.hypot(wx, wy)
    if norm == 0.0:
        raise NoTangentWithDirection("zero direction")
    wx /= norm
    wy /= norm
    p = (wx * h.vy - wy * h.vx) / h.cross_uv
    q = (h.ux * wy - h.uy * wx) / h.cross_uv
    pq = p * q
    if pq >= -1e-300:
        raise NoTangentWithDirection(
            "direction is not strictly between the asymptote rays"
        )
    lam = math.sqrt(h.c / -pq)
    if q < 0.0:
        lam = -lam
    alpha = -lam * p
    beta = lam * q
    touch = Point(
        h.apex[0] + alpha * h.ux + beta * h.vx,
        h.apex[1] + alpha * h.uy + beta * h.vy,
    )
    return DirectedLine(touch, wx, wy)


@dataclass(frozen=True)
class TangentCandidate:
    line: DirectedLine  # anchored at the touch point on h1, direction unoriented
    t: float  # tangency parameter on h1
    touch1: Point
    touch2: Point


def common_tangents(h1: HyperbolaBranch, h2: HyperbolaBranch) -> list[TangentCandidate]:
    """All lines tangent to both branches (touching the actual branch arcs).

    Tangents of h1 are parametrized by the touch coordinate t (the tangent
    crosses the asymptotes at 2t and 2*c1/t); imposing tangency against h2's
    canonical quadratic gives a quartic in t.
    """
    o1, o2 = h1.apex, h2.apex
    x11 = h1.cross_uv

    def a_coord(qx: float, qy: float) -> float:
        return (qx * h1.vy - qy * h1.vx) / x11

    def b_coord(qx: float, qy: float) -> float:
        return (h1.ux * qy - h1.uy * qx) / x11

    # h1-frame coordinates of points written over h2's frame:
    # alpha1 = g0 + g1*alpha2 + g2*beta2 (and beta1 likewise with h's).
    dxo = o2[0] - o1[0]
    dyo = o2[1] - o1[1]
    g0 = a_coord(dxo, dyo)
    g1 = a_coord(h2.ux, h2.uy)
    g2 = a_coord(h2.vx, h2.vy)
    h0 = b_coord(dxo, dyo)
    h1_ = b_coord(h2.ux, h2.uy)
    h2_ = b_coord(h2.vx, h2.vy)

    c1 = h1.c
    c2 = h2.c
    # The tangent of h1 at parameter t is c1*alpha + t^2*beta = 2*c1*t in
    # h1 coordinates; rewritten over h2 coordinates it is
    # m(t)*alpha2 + k(t)*beta2 = w(t) and tangency to h2 means w^2 = 4*c2*m*k.
    coef4 = h0 * h0 - 4.0 * c2 * h1_ * h2_
    coef3 = -4.0 * c1 * h0
    coef2 = 4.0 * c1 * c1 + 2.0 * c1 * g0 * h0 - 4.0 * c2 * c1 * (g1 * h2_ + g2 * h1_)
    coef1 = -4.0 * c1 * c1 * g0
    coef0 = c1 * c1 * (g0 * g0 - 4.0 * c2 * g1 * g2)

    # The expansion cancels catastrophically when the branches are nearly
    # mutually tangent; such coefficients cannot seed anything useful.
    mag4 = h0 * h0 + abs(4.0 * c2 * h1_ * h2_)
    mag2 = 4.0 * c1 * c1 + abs(2.0 * c1 * g0 * h0) + abs(
        4.0 * c2 * c1 * (g1 * h2_ + g2 * h1_)
    )
    mag0 = c1 * c1 * (g0 * g0 + abs(4.0 * c2 * g1 * g2))
    reliable = (
        abs(coef4) >= 1e-7 * mag4
        and abs(coef2) >= 1e-7 * mag2
        and abs(coef0) >= 1e-7 * mag0
    )

    scale = math.sqrt(c1)  # natural size of the tangency parameter
    if reliable:
        roots, seeds = _real_roots_quartic(
            coef4 * scale**4,
            coef3 * scale**3,
            coef2 * scale**2,
            coef1 * scale,
            coef0,
        )
        polished = []
        for tau in roots:
            t = tau * scale
            if t > 0.0:
                t = _polish_root(coef4, coef3, coef2, coef1, coef0, t)
                if t > 0.0:
                    polished.append(t)
        out = _candidates_from_starts(h1, h2, polished + [tau * scale for tau in seeds])
        if out:
            return out
    # Geometric seed: the h1 tangent whose direction is the apex chord. In
    # the nearly-degenerate regime the common tangents cluster around it.
    chord = _chord_tangent_param(h1, h2)
    if chord is not None:
        out = _candidates_from_starts(h1, h2, [chord])
        if out:
            return out
    np_roots, np_seeds = _roots_numpy(
        (coef4 * scale**4, coef3 * scale**3, coef2 * scale**2, coef1 * scale, coef0)
    )
    return _candidates_from_starts(h1, h2, [tau * scale for tau in np_roots + np_seeds])


def _chord_tangent_param(h1: HyperbolaBranch, h2: HyperbolaBranch) -> float | None:
    """Tangency parameter of the h1 tangent parallel to the apex chord."""
    wx = h2.apex[0] - h1.apex[0]
    wy = h2.apex[1] - h1.apex[1]
    p = (wx * h1.vy - wy * h1.vx) / h1.cross_uv
    q = (h1.ux * wy - h1.uy * wx) / h1.cross_uv
    pq = p * q
    if pq >= 0.0:
        return None
    lam = math.sqrt(h1.c / -pq)
    if q < 0.0:
        lam = -lam
    return -lam * p


def _candidates_from_starts(
    h1: HyperbolaBranch, h2: HyperbolaBranch, starts: list[float]
) -> list[TangentCandidate]:
    """Refine start parameters onto true common tangents and keep the ones
    that certify: tiny cut-area residual on h2 and both touch points on the
    actual branch arcs."""
    out: list[TangentCandidate] = []
    kept_t: list[float] = []
    for start in starts:
        if not start > 0.0:
            continue
        t, resid = _refine_geometric(h1, h2, start)
        if not resid <= 1e-7 * h2.S:
            continue  # start did not land on a real tangency
        if any(abs(t - tt) <= 1e-6 * max(t, tt) for tt in kept_t):
            continue  # numerically split double root
        line = _tangent_at(h1, t)
        crossings = _ray_crossings(h2, line)
        if crossings is None:
            continue
        tu, tv = crossings
        if not (tu > 0.0 and tv > 0.0):
            continue  # tangent to the opposite branch of h2's hyperbola
        kept_t.append(t)
        o2 = h2.apex
        touch2 = Point(
            o2[0] + 0.5 * tu * h2.ux + 0.5 * tv * h2.vx,
            o2[1] + 0.5 * tu * h2.uy + 0.5 * tv * h2.vy,
        )
        out.append(
            TangentCandidate(line=line, t=t, touch1=line.anchor, touch2=touch2)
        )
    return out


def _ray_crossings(h: HyperbolaBranch, l: DirectedLine) -> tuple[float, float] | None:
    """Signed parameters where the line crosses the two asymptote lines."""
    cu = h.ux * l.dy - h.uy * l.dx
    cv = h.vx * l.dy - h.vy * l.dx
    if abs(cu) < EPS_PAR or abs(cv) < EPS_PAR:
        return None
    ax = l.anchor[0] - h.apex[0]
    ay = l.anchor[1] - h.apex[1]
    w = ax * l.dy - ay * l.dx
    return w / cu, w / cv


def _tangent_at(h: HyperbolaBranch, t: float) -> DirectedLine:
    """Tangent of the branch at parameter t (touch point (t, c/t))."""
    o = h.apex
    beta = h.c / t
    touch = Point(o[0] + t * h.ux + beta * h.vx, o[1] + t * h.uy + beta * h.vy)
    dx = 2.0 * beta * h.vx - 2.0 * t * h.ux
    dy = 2.0 * beta * h.vy - 2.0 * t * h.uy
    norm = math.hypot(dx, dy)
    return DirectedLine(touch, dx / norm, dy / norm)


def _refine_geometric(
    h1: HyperbolaBranch, h2: HyperbolaBranch, t: float
) -> tuple[float, float]:
    """Secant refinement of a common-tangent parameter against the cut-area
    residual on h2; the quartic root is only a starting guess.

    The residual is evaluated from exact h1 tangents, which conditions much
    better than the expanded quartic when the two common tangents nearly
    coincide. Returns (parameter, |residual|)."""
    o1x, o1y = h1.apex
    u1x, u1y, v1x, v1y, c1 = h1.ux, h1.uy, h1.vx, h1.vy, h1.c
    o2x, o2y = h2.apex
    u2x, u2y, v2x, v2y = h2.ux, h2.uy, h2.vx, h2.vy
    half_x2 = 0.5 * abs(h2.cross_uv)
    s2 = h2.S

    def g(tt: float) -> float:
        if not tt > 0.0:
            return math.inf
        beta = c1 / tt
        # Tangent of h1 at tt: touch point and (unnormalized) direction.
        px = o1x + tt * u1x + beta * v1x
        py = o1y + tt * u1y + beta * v1y
        dx = beta * v1x - tt * u1x
        dy = beta * v1y - tt * u1y
        cu = u2x * dy - u2y * dx
        cv = v2x * dy - v2y * dx
        if cu == 0.0 or cv == 0.0:
            return math.inf
        w = (px - o2x) * dy - (py - o2y) * dx
        tu = w / cu
        tv = w / cv
        if tu <= 0.0 or tv <= 0.0:
            return math.inf
        return tu * tv * half_x2 - s2

    tol = 1e-13 * s2
    g0 = g(t)
    if not math.isfinite(g0):
        return t, math.inf
    if abs(g0) <= tol:
        return t, abs(g0)
    t0, t1 = t, t * (1.0 + 1e-8)
    g1 = g(t1)
    best_t, best_g = (t0, abs(g0)) if abs(g0) <= abs(g1) else (t1, abs(g1))
    if not math.isfinite(g1):
        return t, abs(g0)
    for _ in range(25):
        if g1 == g0:
            break
        t2 = t1 - g1 * (t1 - t0) / (g1 - g0)
        if not (t2 > 0.0 and math.isfinite(t2)) or abs(t2 - t1) > 0.5 * t1:
            break
        g2 = g(t2)
        if not math.isfinite(g2):
            break
        t0, g0, t1, g1 = t1, g1, t2, g2
        if abs(g2) < best_g:
            best_t, best_g = t2, abs(g2)
            if best_g <= tol:
                break
        if abs(t1 - t0) <= 1e-15 * t1:
            break
    return best_t, best_g


def _polish_root(c4: float, c3: float, c2: float, c1: float, c0: float,
                 t: float) -> float:
    for _ in range(3):
        f = (((c4 * t + c3) * t + c2) * t + c1) * t + c0
        df = ((4.0 * c4 * t + 3.0 * c3) * t + 2.0 * c2) * t + c1
        if df == 0.0:
            break
        step = f / df
        t2 = t - step
        if not math.isfinite(t2):
            break
        t = t2
        if abs(step) <= 1e-15 * (1.0 + abs(t)):
            break
    return t


def common_tangent(
    h1: HyperbolaBranch,
    h2: HyperbolaBranch,
    orient: tuple[DirectedLine, DirectedLine],
    bracket: tuple[float, float] | None = None,
    check: bool = True,
) -> DirectedLine:
    """The solver-relevant common tangent, directed from its crossing with
    ``orient[0]`` to its crossing with ``orient[1]``.

    Among the candidate common tangents, selects the one whose direction lies
    in the clockwise ``bracket`` (a pair of raw angles spanning < pi). Falls
    back to a direction bisection when the closed-form root finding yields no
    candidate in the bracket.
    """
    from_line, to_line = orient
    picked: list[DirectedLine] = []
    for cand in common_tangents(h1, h2):
        try:
            oriented = _orient(cand.line, from_line, to_line)
        except Exception:
            continue
        # Solver configuration: both branch apexes lie strictly on the right
        # of the tangent directed from the from-line to the to-line crossing.
        if _side_val(oriented, h1.apex) >= 0.0 or _side_val(oriented, h2.apex) >= 0.0:
            continue
        if bracket is None or _in_bracket(cw_angle(oriented.dx, oriented.dy), bracket):
            picked.append(oriented)
    if len(picked) == 1:
        line = picked[0]
    elif len(picked) > 1:
        raise NoCommonTangent(
            f"{len(picked)} common tangents satisfy the selection rule"
        )
    else:
        if bracket is None:
            raise NoCommonTangent("no common tangent touches both branch arcs")
        line = _bisect_common_tangent(h1, h2, from_line, to_line, bracket)
    if check:
        # catches wrong-root selection (off at O(1)); the slack absorbs the
        # conditioning loss of far-offset coordinate frames
        for h in (h1, h2):
            if classify(h, line, rel=1e-6) is not Classification.TANGENT:
                raise CommonTangentInvalid(
                    f"selected line is not tangent (cut={cut_area(h, line)!r}, S={h.S!r})"
                )
    return line


def _orient(line: DirectedLine, from_line: DirectedLine, to_line: DirectedLine) -> DirectedLine:
    """Direct the line from its from_line crossing to its to_line crossing.

    Only the sign comes from the crossings; reusing the line's own direction
    avoids the precision loss of rebuilding it from nearby crossing points.
    """
    p_from = intersect_lines(line, from_line)
    p_to = intersect_lines(line, to_line)
    if line.dx * (p_to[0] - p_from[0]) + line.dy * (p_to[1] - p_from[1]) >= 0.0:
        return line
    return DirectedLine(line.anchor, -line.dx, -line.dy)


def _side_val(line: DirectedLine, p: Point) -> float:
    return line.dx * (p[1] - line.anchor[1]) - line.dy * (p[0] - line.anchor[0])


def _in_bracket(angle: float, bracket: tuple[float, float], tol: float = 1e-7) -> bool:
    lo, hi = bracket
    span = cw_delta(lo, hi)
    d = cw_delta(lo, angle)
    return d <= span + tol or d >= 2.0 * math.pi - tol


def _bisect_common_tangent(
    h1: HyperbolaBranch,
    h2: HyperbolaBranch,
    from_line: DirectedLine,
    to_line: DirectedLine,
    bracket: tuple[float, float],
) -> DirectedLine:
    """Bisection on direction: the tangent of h1 rotates through the bracket
    and the area it cuts from h2 crosses h2's constant exactly at the common
    tangent."""
    lo, hi = bracket
    span = cw_delta(lo, hi)

    wx0 = math.cos(lo)
    wy0 = -math.sin(lo)

    def eval_at(delta: float) -> tuple[float, DirectedLine | None]:
        wx, wy = rotate_cw(wx0, wy0, delta)
        try:
            tan = tangent_with_direction(h1, wx, wy)
        except NoTangentWithDirection:
            return math.nan, None
        area = cut_area(h2, tan)
        if area == INF:
            return math.inf, tan
        return area - h2.S, tan

    samples = 65
    prev_val = None
    prev_d = None
    found = None
    for i in range(samples + 1):
        d = span * i / samples
        val, _ = eval_at(d)
        if math.isnan(val):
            prev_val = None
            continue
        if prev_val is not None and (val == 0.0 or (val > 0) != (prev_val > 0)):
            found = (prev_d, d)
            break
        prev_val, prev_d = val, d
    if found is None:
        raise NoCommonTangent("bisection found no sign change across the bracket")
    a, b = found
    line = None
    for _ in range(100):
        mid = 0.5 * (a + b)
        val, line = eval_at(mid)
        if math.isnan(val):
            break
        va, _ = eval_at(a)
        if (val > 0) == (va > 0):
            a = mid
        else:
            b = mid
        if b - a < 1e-15 * (1.0 + span):
            break
    if line is None:
        raise NoCommonTangent("bisection failed to produce a tangent")
    # The sign change may sit on the boundary where the cut region becomes
    # unbounded rather than on a true zero; the secant gate decides.
    crossings = _ray_crossings(h1, line)
    if crossings is None or not crossings[0] > 0.0:
        raise NoCommonTangent("bisection left the branch arc")
    t, resid = _refine_geometric(h1, h2, 0.5 * crossings[0])
    if not resid <= 1e-6 * h2.S:
        raise NoCommonTangent(
            f"bisection did not certify a tangency (residual {resid:.3e})"
        )
    return _orient(_tangent_at(h1, t), from_line, to_line)


# ---------------------------------------------------------------------------
# Real roots of low-degree polynomials (closed form + fallback).
# ---------------------------------------------------------------------------


def _real_roots_quartic(
    c4: float, c3: float, c2: float, c1: float, c0: float
) -> tuple[list[float], list[float]]:
    """Real roots of the quartic, plus the real parts of any complex pairs
    (useful as refinement seeds for nearly-double roots)."""
    coeffs = (c4, c3, c2, c1, c0)
    top = max(abs(v) for v in coeffs)
    if top == 0.0 or not all(math.isfinite(v) for v in coeffs):
        return [], []
    if abs(c4) < 1e-12 * top:
        return _roots_numpy(coeffs)
    b, c, d, e = c3 / c4, c2 / c4, c1 / c4, c0 / c4
    res = _ferrari(b, c, d, e)
    if res is None:
        return _roots_numpy(coeffs)
    return res


def _ferrari(b: float, c: float, d: float, e: float) -> tuple[list[float], list[float]] | None:
    p = c - 3.0 * b * b / 8.0
    q = d - 0.5 * b * c + b * b * b / 8.0
    r = e - 0.25 * b * d + b * b * c / 16.0 - 3.0 * b ** 4 / 256.0
    shift = -0.25 * b
    scale = max(1.0, abs(p), abs(q), abs(r))
    out: list[float] = []
    seeds: list[float] = []
    if abs(q) <= 1e-14 * scale:
        for z in _real_roots_quadratic(1.0, p, r)[0]:
            if z >= -1e-14 * scale:
                s = math.sqrt(max(z, 0.0))
                out.extend((s + shift, -s + shift))
            else:
                seeds.append(shift)
        return sorted(set(out)), seeds
    zs = _real_roots_cubic(1.0, 2.0 * p, p * p - 4.0 * r, -q * q)
    z0 = max(zs) if zs else -1.0
    if z0 <= 0.0:
        return None
    m = math.sqrt(z0)
    s1 = 0.5 * (p + z0 - q / m)
    s2 = 0.5 * (p + z0 + q / m)
    for mm, ss in ((m, s1), (-m, s2)):
        real, vert = _real_roots_quadratic(1.0, mm, ss)
        out.extend(y + shift for y in real)
        seeds.extend(y + shift for y in vert)
    return sorted(out), seeds


def _real_roots_quadratic(a: float, b: float, c: float) -> tuple[list[float], list[float]]:
    """Real roots, plus the vertex location when the pair is complex."""
    disc = b * b - 4.0 * a * c
    tol = 1e-14 * max(b * b, abs(4.0 * a * c), 1e-300)
    if disc < -tol:
        return [], [-0.5 * b / a]
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else 0.5 * sq * (1 if a > 0 else -1)
    if q == 0.0:
        return ([0.0] if c == 0.0 else [], [])
    return [q / a, c / q], []


def _real_roots_cubic(a: float, b: float, c: float, d: float) -> list[float]:
    b, c, d = b / a, c / a, d / a
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    half_q = 0.5 * q
    third_p = p / 3.0
    disc = half_q * half_q + third_p ** 3
    if disc > 0.0:
        s = math.sqrt(disc)
        u = _cbrt(-half_q + s)
        v = _cbrt(-half_q - s)
        return [u + v + shift]
    if p == 0.0:
        return [_cbrt(-q) + shift]
    rho = math.sqrt(-third_p)
    arg = max(-1.0, min(1.0, -half_q / rho ** 3))
    theta = math.acos(arg)
    return [
        2.0 * rho * math.cos((theta - 2.0 * math.pi * k) / 3.0) + shift
        for k in range(3)
    ]


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _roots_numpy(coeffs: tuple[float, ...]) -> tuple[list[float], list[float]]:
    arr = np.array(coeffs, dtype=float)
    nz = np.flatnonzero(np.abs(arr) > 0)
    if len(nz) == 0:
        return [], []
    arr = arr[nz[0]:]
    if len(arr) <= 1:
        return [], []
    roots = np.roots(arr)
    out = []
    seeds = []
    for r in roots:
        if abs(r.imag) <= 1e-8 * (1.0 + abs(r)):
            out.append(float(r.real))
        else:
            seeds.append(float(r.real))
    return sorted(out), sorted(set(seeds))
