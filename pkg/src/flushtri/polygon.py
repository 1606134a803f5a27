"""Convex input polygons.

Vertices are stored in clockwise order; edge i runs from vertex i to vertex
i+1 and ``line(i)`` is its extension, directed so the polygon lies on the
right. General position is enforced on construction: strictly convex turns,
no collinear consecutive triple, and pairwise non-parallel edges (all checked
against EPS_TURN). Inputs that violate these are rejected; ``perturb=True``
jitters the vertices once by 1e-9 * diameter and revalidates.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import (
    CollinearVertices,
    GenerationFailed,
    NonMonotoneDirection,
    NotConvex,
    ParallelEdges,
    SameEdge,
    TooFewVertices,
)
from .geometry import TWO_PI, DirectedLine, Point, directed_line

# Minimum exterior turn angle and minimum pairwise direction separation
# (radians). Inputs below this are rejected as degenerate.
EPS_TURN = 1e-9

PI = math.pi

_VALTR_MAX_N = 4096
_GENERATION_RETRIES = 64


class ConvexPolygon:
    """Validated clockwise convex polygon with precomputed edge structure.

    Immutable after construction; safe to share between solver runs.
    Use :func:`validate` or :func:`generate_random` to build one.
    """

    __slots__ = (
        "n",
        "xs",
        "ys",
        "dxs",
        "dys",
        "cum",
        "far",
        "area",
        "diameter",
        "reversed_input",
        "_lines",
    )

    def __init__(
        self,
        xs: list[float],
        ys: list[float],
        dxs: list[float],
        dys: list[float],
        cum: list[float],
        far: list[int],
        area: float,
        diameter: float,
        reversed_input: bool,
    ):
        self.n = len(xs)
        self.xs = xs
        self.ys = ys
        self.dxs = dxs
        self.dys = dys
        self.cum = cum
        self.far = far
        self.area = area
        self.diameter = diameter
        self.reversed_input = reversed_input
        self._lines: list[DirectedLine] | None = None

    @property
    def vertices(self) -> list[Point]:
        return [Point(x, y) for x, y in zip(self.xs, self.ys)]

    def vertex(self, i: int) -> Point:
        i %= self.n
        return Point(self.xs[i], self.ys[i])

    def edge_dir(self, i: int) -> tuple[float, float]:
        i %= self.n
        return self.dxs[i], self.dys[i]

    def line(self, i: int) -> DirectedLine:
        """Extended line of edge i, directed along the edge (P on the right)."""
        i %= self.n
        if self._lines is None:
            self._lines = [
                DirectedLine(Point(self.xs[k], self.ys[k]), self.dxs[k], self.dys[k])
                for k in range(self.n)
            ]
        return self._lines[i]

    def turn_between(self, i: int, j: int) -> float:
        """Clockwise turn accumulated walking from edge i forward to edge j."""
        d = self.cum[j % self.n] - self.cum[i % self.n]
        if d <= 0.0:
            d += TWO_PI
        return d

    def chases(self, i: int, j: int) -> bool:
        """Chasing relation between edges: the extended lines of i and j meet
        clockwise between them, equivalently the turn from i to j is < pi."""
        i %= self.n
        j %= self.n
        if i == j:
            raise SameEdge(f"chases({i}, {i})")
        return self.turn_between(i, j) < PI

    def farthest_vertices(self) -> list[int]:
        """Vertex index with the largest distance to each edge line."""
        return list(self.far)

    def abs_tol(self) -> float:
        """Absolute point tolerance for this instance (1e-9 * diameter)."""
        return 1e-9 * self.diameter

    def as_vertex_array(self) -> np.ndarray:
        return np.column_stack([np.asarray(self.xs), np.asarray(self.ys)])

    def __repr__(self) -> str:  # pragma: no cover
        return f"ConvexPolygon(n={self.n}, area={self.area:.6g})"


def validate(vertices: Sequence[Sequence[float]], perturb: bool = False) -> ConvexPolygon:
    """Build a ConvexPolygon from raw vertex pairs.

    Counterclockwise input is reversed (reversed_input flag set). Raises
    TooFewVertices, NotConvex, CollinearVertices or ParallelEdges naming the
    offending indices. With ``perturb=True``, a failing input is jittered by
    1e-9 * diameter (deterministically) and validated again.
    """
    try:
        return _validate_once(vertices)
    except (NotConvex, CollinearVertices, ParallelEdges):
        if not perturb:
            raise
    pts = np.asarray(vertices, dtype=float)
    span = float(np.max(np.ptp(pts, axis=0))) or 1.0
    rng = np.random.default_rng(len(pts))
    for _ in range(8):
        jittered = pts + rng.normal(scale=1e-9 * span, size=pts.shape)
        try:
            return _validate_once(jittered)
        except (NotConvex, CollinearVertices, ParallelEdges):
            continue
    return _validate_once(pts)  # re-raise the original failure


def _validate_once(vertices: Sequence[Sequence[float]]) -> ConvexPolygon:
    pts = np.asarray(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise TooFewVertices("expected an (n, 2) array of vertices")
    n = len(pts)
    if n < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {n}")
    if not np.all(np.isfinite(pts)):
        bad = np.argwhere(~np.isfinite(pts))[0][0]
        raise NotConvex(f"non-finite coordinate at vertex {bad}")

    x = pts[:, 0]
    y = pts[:, 1]
    shoelace = float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
    reversed_input = False
    if shoelace > 0.0:  # counterclockwise input
        pts = pts[::-1].copy()
        x = pts[:, 0]
        y = pts[:, 1]
        shoelace = -shoelace
        reversed_input = True
    area = -0.5 * shoelace
    if area <= 0.0:
        raise CollinearVertices("polygon has zero area")

    ex = np.roll(x, -1) - x
    ey = np.roll(y, -1) - y
    elen = np.hypot(ex, ey)
    if np.any(elen == 0.0):
        i = int(np.argmin(elen))
        raise CollinearVertices(f"vertices {i} and {(i + 1) % n} coincide")
    dx = ex / elen
    dy = ey / elen

    # Exterior turns at each vertex v_{i+1}, between edge i and edge i+1.
    # Clockwise polygons have every turn in (0, pi).
    ndx = np.roll(dx, -1)
    ndy = np.roll(dy, -1)
    crossv = dx * ndy - dy * ndx
    dotv = dx * ndx + dy * ndy
    turns = np.arctan2(-crossv, dotv)  # clockwise-positive
    flat = np.abs(turns) <= EPS_TURN
    if np.any(flat):
        i = int(np.argmax(flat))
        raise CollinearVertices(
            f"vertices {i}, {(i + 1) % n}, {(i + 2) % n} are collinear"
        )
    ccw = turns < 0.0
    if np.any(ccw):
        i = int(np.argmax(ccw))
        raise NotConvex(f"reflex turn at vertex {(i + 1) % n}")
    total = float(np.sum(turns))
    if abs(total - TWO_PI) > 1e-6:
        raise NotConvex(f"exterior turns sum to {total:.9f}, expected 2*pi")

    # Pairwise non-parallel edges: direction angles must be separated mod pi.
    ang = np.mod(np.arctan2(dy, dx), PI)
    order = np.argsort(ang, kind="stable")
    sorted_ang = ang[order]
    gaps = np.diff(sorted_ang)
    wrap_gap = sorted_ang[0] + PI - sorted_ang[-1]
    if n >= 2:
        k = int(np.argmin(gaps)) if len(gaps) else 0
        min_gap = float(gaps[k]) if len(gaps) else wrap_gap
        if wrap_gap < min_gap:
            min_gap = wrap_gap
            a_idx, b_idx = int(order[-1]), int(order[0])
        else:
            a_idx, b_idx = int(order[k]), int(order[k + 1])
        if min_gap <= EPS_TURN:
            raise ParallelEdges(f"edges {a_idx} and {b_idx} are parallel")

    cum = np.concatenate([[0.0], np.cumsum(turns[:-1])])

    # Farthest vertex per edge: the first vertex after which the cumulative
    # turn from edge i exceeds pi. Monotone pointer, O(n) total.
    far = np.searchsorted(
        np.concatenate([cum, cum + TWO_PI]), cum + PI, side="right"
    )
    far = np.mod(far, n).astype(int)

    bbox_diag = math.hypot(float(np.ptp(x)), float(np.ptp(y)))

    return ConvexPolygon(
        xs=x.tolist(),
        ys=y.tolist(),
        dxs=dx.tolist(),
        dys=dy.tolist(),
        cum=cum.tolist(),
        far=far.tolist(),
        area=area,
        diameter=bbox_diag,
        reversed_input=reversed_input,
    )


class SupportPointer:
    """Monotone pointer answering rotating support-line queries.

    Serves directed support lines whose direction offsets (unwrapped,
    clockwise) never decrease within one solver run; the touched vertex then
    only advances clockwise, for amortized O(1) per query.
    """

    __slots__ = ("poly", "idx", "last_offset", "advances", "_started")

    def __init__(self, poly: ConvexPolygon):
        self.poly = poly
        self.idx = 0
        self.last_offset = -math.inf
        self.advances = 0
        self._started = False

    def serve(self, offset: float, wx: float, wy: float, tol: float = 1e-7) -> int:
        """Vertex supporting the line with direction (wx, wy), polygon on the
        right. ``offset`` is the caller's unwrapped direction bookkeeping and
        must be non-decreasing across calls."""
        if offset < self.last_offset - tol:
            raise NonMonotoneDirection(
                f"support offset went from {self.last_offset} to {offset}"
            )
        self.last_offset = max(self.last_offset, offset)
        # All of P right of the line <=> the touched vertex maximizes the dot
        # product with the left normal (-wy, wx).
        nx, ny = -wy, wx
        xs = self.poly.xs
        ys = self.poly.ys
        n = self.poly.n
        if not self._started:
            best = 0
            bestval = nx * xs[0] + ny * ys[0]
            for i in range(1, n):
                v = nx * xs[i] + ny * ys[i]
                if v > bestval:
                    best, bestval = i, v
            self.idx = best
            self._started = True
            return best
        i = self.idx
        cur = nx * xs[i] + ny * ys[i]
        while True:
            j = i + 1
            if j == n:
                j = 0
            nxt = nx * xs[j] + ny * ys[j]
            if nxt > cur:
                i = j
                cur = nxt
                self.advances += 1
            else:
                break
        self.idx = i
        return i

    def support_line(self, offset: float, wx: float, wy: float) -> DirectedLine:
        i = self.serve(offset, wx, wy)
        return directed_line((self.poly.xs[i], self.poly.ys[i]), wx, wy)


def support_line(poly: ConvexPolygon, ptr: SupportPointer, wx: float, wy: float,
                 offset: float) -> DirectedLine:
    """Directed line with direction (wx, wy) through a polygon vertex, with
    all of the polygon on its right. Queries must come with non-decreasing
    unwrapped offsets over the pointer's lifetime."""
    assert ptr.poly is poly
    return ptr.support_line(offset, wx, wy)


def generate_random(n: int, seed: int) -> ConvexPolygon:
    """Deterministic random convex polygon with n vertices.

    Uses Valtr's convex-position construction for small n and a closed
    random-direction fan for large n (whose pairwise direction gaps stay
    well above EPS_TURN, which Valtr cannot guarantee as n grows). Redraws
    on validation failure; raises GenerationFailed after a bounded number
    of attempts.
    """
    if n < 3:
        raise GenerationFailed(f"need n >= 3, got {n}")
    rng = np.random.default_rng(np.random.SeedSequence([n, seed & 0xFFFFFFFF]))
    last_error: Exception | None = None
    for _ in range(_GENERATION_RETRIES):
        pts = _valtr(rng, n) if n <= _VALTR_MAX_N else _direction_fan(rng, n)
        try:
            poly = _validate_once(pts)
        except (NotConvex, CollinearVertices, ParallelEdges) as exc:
            last_error = exc
            continue
        return poly
    raise GenerationFailed(f"no valid polygon after {_GENERATION_RETRIES} draws: {last_error}")


def _valtr(rng: np.random.Generator, n: int) -> np.ndarray:
    """Valtr's algorithm: uniformly random polygon in convex position."""
    xs = np.sort(rng.random(n))
    ys = np.sort(rng.random(n))
    vx = _chain_diffs(rng, xs)
    vy = _chain_diffs(rng, ys)
    rng.shuffle(vy)
    vecs = np.column_stack([vx, vy])
    angles = np.arctan2(vecs[:, 1], vecs[:, 0])
    vecs = vecs[np.argsort(-angles, kind="stable")]  # clockwise
    pts = np.cumsum(vecs, axis=0)
    return pts - pts.mean(axis=0)


def _chain_diffs(rng: np.random.Generator, sorted_vals: np.ndarray) -> np.ndarray:
    """Split sorted values into two chains and return their step differences."""
    n = len(sorted_vals)
    lo, hi = sorted_vals[0], sorted_vals[-1]
    interior = sorted_vals[1:-1]
    mask = rng.random(n - 2) < 0.5
    up = np.concatenate([[lo], interior[mask], [hi]])
    down = np.concatenate([[lo], interior[~mask], [hi]])
    return np.concatenate([np.diff(up), -np.diff(down)])


def _direction_fan(rng: np.random.Generator, n: int) -> np.ndarray:
    """Convex polygon from n jittered edge directions with controlled gaps.

    Direction angles mod pi keep a gap of at least 0.4*pi/n, so the pairwise
    non-parallel validation passes for any n. Edge lengths are balanced to
    close the polygon exactly.
    """
    # Controlled-jitter direction classes mod pi.
    phi = (np.arange(n) + 0.3 * rng.uniform(-1.0, 1.0, n)) * (PI / n)
    half = rng.random(n) < 0.5
    # Both half-circles must be populated for the directions to span 2*pi.
    quarter = max(1, n // 4)
    if half.sum() < quarter or (~half).sum() < quarter:
        half = np.arange(n) % 2 == 0
    psi = np.concatenate([phi[~half], phi[half] + PI])  # sorted clockwise run
    ux = np.cos(psi)
    uy = -np.sin(psi)  # clockwise-increasing angles
    lengths = 1.0 + 0.5 * rng.uniform(-1.0, 1.0, n)
    # Iteratively cancel the closure defect, then zero it exactly using two
    # nearly orthogonal edges.
    for _ in range(6):
        sx = float(np.dot(lengths, ux))
        sy = float(np.dot(lengths, uy))
        lengths = lengths - (2.0 / n) * (ux * sx + uy * sy)
    i = 0
    j = int(np.argmax(np.abs(ux * uy[i] - uy * ux[i])))
    det = ux[i] * uy[j] - uy[i] * ux[j]
    sx = float(np.dot(lengths, ux))
    sy = float(np.dot(lengths, uy))
    lengths[i] += (-sx * uy[j] + sy * ux[j]) / det
    lengths[j] += (-ux[i] * sy + uy[i] * sx) / det
    if np.any(lengths <= 0.0):
        lengths = np.maximum(lengths, 1e-3)  # rare; next validation decides
    pts = np.cumsum(np.column_stack([lengths * ux, lengths * uy]), axis=0)
    return pts - pts.mean(axis=0)
