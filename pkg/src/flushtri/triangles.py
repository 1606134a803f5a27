"""All-flush triangles and their stability structure.

An all-flush triangle is the intersection of three edge half-planes of the
polygon, written by its clockwise edge-index triple (i, j, k). Its area is
finite exactly when each edge chases the next around the triple. Stability
of an edge means no single replacement of that edge gives a smaller triangle;
by unimodality of the area in the replaced edge this can be decided from the
two adjacent replacements alone.

The module also provides the quadrant-cut areas behind the generalized
back/forw-stability predicates (defined for infinite triangles too) and the
clockwise-first optimal apex with its incremental pointer walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import (
    InfiniteTriangle,
    InvalidEdgePair,
    NotChasing,
    NotClockwiseTriple,
    SolverInvariantError,
)
from .geometry import EPS_REL, Point
from .polygon import ConvexPolygon

INF = math.inf

_PI = math.pi
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ExtArea:
    """Non-negative area or the distinguished +infinity state.

    Two infinite areas are never ordered against each other; every predicate
    checks finiteness first, and the comparison operators enforce that.
    """

    value: float
    infinite: bool = False

    @staticmethod
    def finite(v: float) -> "ExtArea":
        return ExtArea(float(v), False)

    @staticmethod
    def inf() -> "ExtArea":
        return ExtArea(math.inf, True)

    def __lt__(self, other: "ExtArea") -> bool:
        if self.infinite and other.infinite:
            raise InfiniteTriangle("cannot compare two infinite areas")
        if self.infinite:
            return False
        if other.infinite:
            return True
        return self.value < other.value

    def __le__(self, other: "ExtArea") -> bool:
        if self.infinite and other.infinite:
            raise InfiniteTriangle("cannot compare two infinite areas")
        if self.infinite:
            return False
        if other.infinite:
            return True
        return self.value <= other.value

    def __float__(self) -> float:
        return self.value if not self.infinite else math.inf


@dataclass(frozen=True)
class FlushTriangle:
    """Clockwise edge triple with its corner points and extended-real area."""

    i: int
    j: int
    k: int
    corners: tuple[Point, Point, Point] | None
    area: ExtArea

    @property
    def edges(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)


@dataclass(frozen=True)
class StabilityFlags:
    back: bool
    forw: bool
    stable: bool


def _leq(x: float, y: float) -> bool:
    """x <= y with relative ties treated as equal; y may be +inf."""
    return x <= y or (x - y) <= EPS_REL * max(x, y)


def _lt(x: float, y: float) -> bool:
    """x strictly below y, beyond the relative tie tolerance; y may be +inf."""
    if y == INF:
        return x < INF
    return x < y and (y - x) > EPS_REL * max(x, y)


def _isect(P: ConvexPolygon, i: int, j: int) -> tuple[float, float]:
    """Intersection of edge lines i and j (assumed non-parallel)."""
    xs, ys, dxs, dys = P.xs, P.ys, P.dxs, P.dys
    dix, diy = dxs[i], dys[i]
    djx, djy = dxs[j], dys[j]
    denom = dix * djy - diy * djx
    t = ((xs[j] - xs[i]) * djy - (ys[j] - ys[i]) * djx) / denom
    return xs[i] + t * dix, ys[i] + t * diy


def _chases(P: ConvexPolygon, i: int, j: int) -> bool:
    d = P.cum[j] - P.cum[i]
    if d <= 0.0:
        d += _TWO_PI
    return d < _PI


def area_of_triple(P: ConvexPolygon, a: int, b: int, c: int) -> float:
    """Area of the all-flush triangle on edges (a, b, c), +inf when unbounded.

    Any index triple may be passed; triples that are not in clockwise cyclic
    order fail the chasing cycle and come out infinite.
    """
    if not (_chases(P, a, b) and _chases(P, b, c) and _chases(P, c, a)):
        return INF
    px, py = _isect(P, a, b)
    qx, qy = _isect(P, b, c)
    rx, ry = _isect(P, c, a)
    return 0.5 * abs((qx - px) * (ry - py) - (qy - py) * (rx - px))


def _cyclic_triple_ok(n: int, i: int, j: int, k: int) -> bool:
    if i == j or j == k or k == i:
        return False
    return ((j - i) % n) + ((k - j) % n) + ((i - k) % n) == n


def triangle_of(P: ConvexPolygon, i: int, j: int, k: int) -> FlushTriangle:
    """The all-flush triangle on the clockwise edge triple (i, j, k)."""
    n = P.n
    i, j, k = i % n, j % n, k % n
    if not _cyclic_triple_ok(n, i, j, k):
        raise NotClockwiseTriple(f"({i}, {j}, {k}) is not a clockwise triple")
    if not (_chases(P, i, j) and _chases(P, j, k) and _chases(P, k, i)):
        return FlushTriangle(i, j, k, None, ExtArea.inf())
    pi = Point(*_isect(P, i, j))
    pj = Point(*_isect(P, j, k))
    pk = Point(*_isect(P, k, i))
    area = 0.5 * abs(
        (pj.x - pi.x) * (pk.y - pi.y) - (pj.y - pi.y) * (pk.x - pi.x)
    )
    return FlushTriangle(i, j, k, (pi, pj, pk), ExtArea.finite(area))


def normalized_triple(n: int, a: int, b: int, c: int) -> tuple[int, int, int]:
    """Rotation of a cyclic triple starting at its smallest index."""
    t = (a % n, b % n, c % n)
    m = t.index(min(t))
    return t[m:] + t[:m]


# ---------------------------------------------------------------------------
# Quadrant cuts at a polygon corner.
#
# At vertex v_k the lines of edges k-1 and k bound two exterior quadrants:
# the "minus" quadrant behind edge k-1 (rays backward along both edge
# directions) and the "plus" quadrant beyond edge k (rays forward along
# both). corner_area(a, k, sign) is the area the half-plane of edge a cuts
# from the quadrant toward its apex.
# ---------------------------------------------------------------------------


def _corner_minus(P: ConvexPolygon, a: int, k: int) -> float:
    """Area cut by edge a's half-plane from the minus quadrant at vertex k.

    Zero when a == k-1; +inf when edge a does not chase edge k.
    """
    n = P.n
    km1 = k - 1 if k else n - 1
    if a == km1:
        return 0.0
    if not _chases(P, a, k):
        return INF
    vx, vy = P.xs[k], P.ys[k]
    x1, y1 = _isect(P, a, km1)
    x2, y2 = _isect(P, a, k)
    return 0.5 * abs((x1 - vx) * (y2 - vy) - (y1 - vy) * (x2 - vx))


def _corner_plus(P: ConvexPolygon, a: int, k: int) -> float:
    """Area cut by edge a's half-plane from the plus quadrant at vertex k.

    Zero when a == k; +inf when edge k-1 does not chase edge a.
    """
    n = P.n
    km1 = k - 1 if k else n - 1
    if a == k:
        return 0.0
    if not _chases(P, km1, a):
        return INF
    vx, vy = P.xs[k], P.ys[k]
    x1, y1 = _isect(P, a, km1)
    x2, y2 = _isect(P, a, k)
    return 0.5 * abs((x1 - vx) * (y2 - vy) - (y1 - vy) * (x2 - vx))


def corner_area(P: ConvexPolygon, a: int, k: int, sign: Literal["+", "-"]) -> ExtArea:
    """Public wrapper over the quadrant cuts; see _corner_minus/_corner_plus."""
    n = P.n
    a %= n
    k %= n
    km1 = (k - 1) % n
    if sign == "-":
        if a == k:
            raise InvalidEdgePair(f"edge {a} bounds the minus quadrant at vertex {k}")
        v = _corner_minus(P, a, k)
    elif sign == "+":
        if a == km1:
            raise InvalidEdgePair(f"edge {a} bounds the plus quadrant at vertex {k}")
        v = _corner_plus(P, a, k)
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return ExtArea.inf() if v == INF else ExtArea.finite(v)


# ---------------------------------------------------------------------------
# Stability predicates.
# ---------------------------------------------------------------------------


def _back_stable(P: ConvexPolygon, pred: int, m: int, succ: int) -> bool:
    """Generalized back-stability of edge m in the triple (pred, m, succ).

    Valid for infinite triangles: stepping m backward swaps a cut of the
    minus quadrant at vertex m (from edge pred) against a cut of the plus
    quadrant (from edge succ)."""
    if not _chases(P, pred, m):
        return False
    return _leq(_corner_minus(P, pred, m), _corner_plus(P, succ, m))


def _forw_stable(P: ConvexPolygon, pred: int, m: int, succ: int) -> bool:
    """Generalized forw-stability of edge m in the triple (pred, m, succ)."""
    if not _chases(P, m, succ):
        return False
    m1 = m + 1 if m + 1 < P.n else 0
    return _leq(_corner_plus(P, succ, m1), _corner_minus(P, pred, m1))


def _edge_roles(
    P: ConvexPolygon, tri: tuple[int, int, int], which: Literal["A", "B", "C"]
) -> tuple[int, int, int]:
    n = P.n
    a, b, c = (tri[0] % n, tri[1] % n, tri[2] % n)
    if not _cyclic_triple_ok(n, a, b, c):
        raise NotClockwiseTriple(f"({a}, {b}, {c}) is not a clockwise triple")
    return {"A": (c, a, b), "B": (a, b, c), "C": (b, c, a)}[which]


def edge_back_stable(
    P: ConvexPolygon, tri: tuple[int, int, int], which: Literal["A", "B", "C"]
) -> bool:
    """Generalized back-stability; defined for infinite triangles as well."""
    return _back_stable(P, *_edge_roles(P, tri, which))


def edge_forw_stable(
    P: ConvexPolygon, tri: tuple[int, int, int], which: Literal["A", "B", "C"]
) -> bool:
    """Generalized forw-stability; defined for infinite triangles as well."""
    return _forw_stable(P, *_edge_roles(P, tri, which))


def edge_stability(
    P: ConvexPolygon, tri: tuple[int, int, int], which: Literal["A", "B", "C"]
) -> StabilityFlags:
    """Back/forw/stable flags for one edge of the triple.

    back and forw use the generalized quadrant definition; the combined
    ``stable`` flag is only defined for finite triangles (InfiniteTriangle
    otherwise), where by unimodality the two local flags decide global
    stability.
    """
    pred, m, succ = _edge_roles(P, tri, which)
    a, b, c = tri[0] % P.n, tri[1] % P.n, tri[2] % P.n
    if not (_chases(P, a, b) and _chases(P, b, c) and _chases(P, c, a)):
        raise InfiniteTriangle(
            f"full stability is undefined for the infinite triangle ({a},{b},{c});"
            " use edge_back_stable/edge_forw_stable"
        )
    back = _back_stable(P, pred, m, succ)
    forw = _forw_stable(P, pred, m, succ)
    return StabilityFlags(back=back, forw=forw, stable=back and forw)


def is_3stable(P: ConvexPolygon, a: int, b: int, c: int) -> bool:
    """True when the triple is finite and no single-edge move shrinks it."""
    n = P.n
    a, b, c = a % n, b % n, c % n
    if not _cyclic_triple_ok(n, a, b, c):
        raise NotClockwiseTriple(f"({a}, {b}, {c}) is not a clockwise triple")
    area0 = area_of_triple(P, a, b, c)
    if area0 == INF:
        return False
    return _is_3stable_finite(P, a, b, c, area0)


def _is_3stable_finite(P: ConvexPolygon, a: int, b: int, c: int, area0: float) -> bool:
    """Local neighbor comparisons; assumes area0 = area_of_triple(a,b,c) finite."""
    n = P.n
    for pred, m, succ in ((c, a, b), (a, b, c), (b, c, a)):
        back = (m - 1) % n == pred or _leq(area0, _area_replace(P, pred, m, succ, (m - 1) % n))
        if not back:
            return False
        forw = (m + 1) % n == succ or _leq(area0, _area_replace(P, pred, m, succ, (m + 1) % n))
        if not forw:
            return False
    return True


def _area_replace(P: ConvexPolygon, pred: int, m: int, succ: int, m2: int) -> float:
    """Area of the triple with edge m replaced by m2 (cyclic order kept)."""
    return area_of_triple(P, pred, m2, succ)


# ---------------------------------------------------------------------------
# Optimal apex.
# ---------------------------------------------------------------------------


def advance_apex(
    P: ConvexPolygon, b: int, c: int, start: int
) -> tuple[int, float, int]:
    """Walk the apex pointer clockwise from ``start`` to the clockwise-first
    area minimizer for the pair (b, c).

    Advances through the leading infinite stretch and then while the area
    strictly decreases (ties stop the walk). Returns (apex, area, steps).
    The caller guarantees ``start`` is at or before the true optimum, which
    bi-monotonicity provides when hints come from earlier pairs.
    """
    n = P.n
    pos_b = (b - c) % n
    a = start % n
    pos = (a - c) % n
    steps = 0
    if pos == 0:
        a = c + 1 if c + 1 < n else 0
        pos = 1
        steps = 1
    if pos >= pos_b:
        raise NotChasing(f"apex hint {start} outside the arc of pair ({b}, {c})")
    cur = area_of_triple(P, a, b, c)
    while pos + 1 < pos_b:
        nxt_idx = a + 1 if a + 1 < n else 0
        nxt = area_of_triple(P, nxt_idx, b, c)
        if cur == INF:
            a, cur, pos = nxt_idx, nxt, pos + 1
            steps += 1
            continue
        if _lt(nxt, cur):
            a, cur, pos = nxt_idx, nxt, pos + 1
            steps += 1
        else:
            break
    if cur == INF:
        raise SolverInvariantError(
            f"no finite apex found for pair ({b}, {c}) from hint {start}"
        )
    return a, cur, steps


def next_opt_apex(P: ConvexPolygon, b: int, c: int, hint: int | None = None) -> int:
    """Clockwise-first edge minimizing the all-flush area for the pair (b, c).

    When both farthest vertices coincide every candidate triangle is
    unbounded and the apex is defined as the edge entering that vertex.
    """
    n = P.n
    b %= n
    c %= n
    if not _chases(P, b, c):
        raise NotChasing(f"edge {b} does not chase edge {c}")
    if ((b - c) % n) < 2:
        raise NotChasing(f"pair ({b}, {c}) has no room for an apex")
    if P.far[b] == P.far[c]:
        return (P.far[b] - 1) % n
    start = hint if hint is not None else (c + 1) % n
    a, _, _ = advance_apex(P, b, c, start)
    return a


# ---------------------------------------------------------------------------
# Interleaving.
# ---------------------------------------------------------------------------


def is_interleaving(
    t1: tuple[int, int, int], t2: tuple[int, int, int], n: int
) -> bool:
    """Whether two clockwise edge triples admit an alternating cyclic merge.

    The merge is non-strict: members of the two triples may coincide.
    """
    p = sorted(x % n for x in t1)
    q = sorted(x % n for x in t2)
    p1 = p[1] - p[0]
    p2 = p[2] - p[0]
    for r in range(3):
        u0 = (q[r] - p[0]) % n
        u1 = (q[(r + 1) % 3] - p[0]) % n
        u2 = (q[(r + 2) % 3] - p[0]) % n
        if u2 == 0:
            u2 = n
        if u0 <= p1 <= u1 <= p2 <= u2:
            return True
    return False
