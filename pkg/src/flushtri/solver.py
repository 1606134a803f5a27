"""The full pipeline: initial 3-stable triangle, the rotate-and-kill sweep
with its amortized-O(1) tangent criterion or the O(log n) binary-search
criterion, plus quadratic and cubic brute-force oracles.

The sweep walks a pair (b, c) over two edge ranges J and K fixed by the
initial 3-stable triangle, emits the best apex triangle for every visited
pair, and each iteration kills one side of the pair; a side may be killed
only when every pair it could still form is dead (admits no 3-stable
triangle). The tangent criterion decides this by comparing the polygon
against a line squeezed between common tangents of four corner hyperbolas;
the direction of that line never decreases, which makes the rotating
support query amortized constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    DMonotonicityViolated,
    InstanceTooLarge,
    SolverInvariantError,
)
from .geometry import TWO_PI, cw_angle
from .hyperbola import _polish_root, _real_roots_quartic, common_tangent, corner_branch
from .polygon import ConvexPolygon, SupportPointer
from .triangles import (
    INF,
    FlushTriangle,
    _chases,
    _corner_minus,
    _corner_plus,
    _is_3stable_finite,
    _lt,
    advance_apex,
    area_of_triple,
    normalized_triple,
    triangle_of,
)

# Angular slack for direction bookkeeping (radians). Computed tangent
# directions are good to ~1e-12; the slack only absorbs rounding, real
# monotonicity violations abort.
ANG_TOL = 1e-7
_WRAP_MARGIN = 1e-6

KILL_B = "B"
KILL_C = "C"


@dataclass
class SolveStats:
    iterations: int = 0
    apex_advances: int = 0
    support_advances: int = 0
    initial_moves: int = 0
    branches: dict[str, int] = field(default_factory=dict)
    kills: list[tuple[int, int, str]] | None = None
    d_final: float = 0.0

    def bump(self, name: str) -> None:
        self.branches[name] = self.branches.get(name, 0) + 1


@dataclass(frozen=True)
class Candidate:
    a: int
    b: int
    c: int
    area: float
    three_stable: bool


@dataclass
class SolverReport:
    algorithm: str
    n: int
    anchor: tuple[int, int, int]  # (r, s, t) of the initial 3-stable triangle
    mft: FlushTriangle
    candidates: list[Candidate]
    stats: SolveStats


def initial_3stable(P: ConvexPolygon, stats: SolveStats | None = None) -> tuple[int, int, int]:
    """One 3-stable triangle (r, s, t), clockwise, in O(n).

    First finds the smallest all-flush triangle flushed with edge 0 (its two
    free edges are then stable), then walks the triple forward or backward
    while any single step shrinks it.
    """
    n = P.n
    stats = stats or SolveStats()
    r = 0
    # Edges s with edge 0 chasing s form the prefix before the far vertex.
    s_hi = P.far[0]  # first edge index with turn(0 -> s) > pi
    best_area = INF
    best = None
    ptr = None
    for s in range(1, s_hi):
        if P.far[s] == P.far[0]:
            # Every apex is unbounded for this pair; keep the pointer moving.
            ptr = (P.far[0] - 1) % n
            continue
        start = ptr if ptr is not None else (s + 1) % n
        a, area, steps = advance_apex(P, 0, s, start)
        stats.apex_advances += steps
        ptr = a
        if _lt(area, best_area):
            best_area = area
            best = (s, a)
    if best is None:
        raise SolverInvariantError("no finite triangle flushed with edge 0")
    s, t = best

    area0 = best_area
    moves = 0
    budget = 8 * n + 16

    def mv() -> None:
        nonlocal moves
        moves += 1
        if moves > budget:
            raise SolverInvariantError("initial walk exceeded its O(n) budget")

    # Forward walk: while moving r forward shrinks the triangle, do so, then
    # greedily advance s and t while that keeps shrinking it.
    while (r + 1) % n != s and _lt(area_of_triple(P, (r + 1) % n, s, t), area0):
        r = (r + 1) % n
        area0 = area_of_triple(P, r, s, t)
        mv()
        changed = True
        while changed:
            changed = False
            while (s + 1) % n != t and _lt(area_of_triple(P, r, (s + 1) % n, t), area0):
                s = (s + 1) % n
                area0 = area_of_triple(P, r, s, t)
                changed = True
                mv()
            while (t + 1) % n != r and _lt(area_of_triple(P, r, s, (t + 1) % n), area0):
                t = (t + 1) % n
                area0 = area_of_triple(P, r, s, t)
                changed = True
                mv()
    # Symmetric backward walk (no-op when the forward walk ran).
    while (r - 1) % n != t and _lt(area_of_triple(P, (r - 1) % n, s, t), area0):
        r = (r - 1) % n
        area0 = area_of_triple(P, r, s, t)
        mv()
        changed = True
        while changed:
            changed = False
            while (s - 1) % n != r and _lt(area_of_triple(P, r, (s - 1) % n, t), area0):
                s = (s - 1) % n
                area0 = area_of_triple(P, r, s, t)
                changed = True
                mv()
            while (t - 1) % n != s and _lt(area_of_triple(P, r, s, (t - 1) % n), area0):
                t = (t - 1) % n
                area0 = area_of_triple(P, r, s, t)
                changed = True
                mv()
    stats.initial_moves = moves
    return r, s, t


class _LinearCriterion:
    """Amortized O(1) kill decisions via the common-tangent comparison line.

    Directions are tracked as unwrapped clockwise offsets from d1, the
    opposite direction of edge s+1; the selected offset never decreases.
    """

    __slots__ = ("P", "d1_angle", "d2_off", "support", "d_off", "d_vx", "d_vy", "stats")

    def __init__(self, P: ConvexPolygon, s: int, r: int, stats: SolveStats):
        n = P.n
        sp1 = (s + 1) % n
        self.P = P
        self.d1_angle = cw_angle(-P.dxs[sp1], -P.dys[sp1])
        self.d2_off = self._offset_raw(cw_angle(-P.dxs[r], -P.dys[r]))
        if self.d2_off < 0.0:
            self.d2_off += TWO_PI
        self.support = SupportPointer(P)
        self.d_off = 0.0
        self.d_vx = -P.dxs[sp1]
        self.d_vy = -P.dys[sp1]
        self.stats = stats

    def _offset_raw(self, angle: float) -> float:
        off = (angle - self.d1_angle) % TWO_PI
        if off > TWO_PI - _WRAP_MARGIN:
            off -= TWO_PI
        return off

    def kill(self, b: int, c: int) -> str:
        P = self.P
        n = P.n
        c1 = c + 1 if c + 1 < n else 0
        if b + 1 == c or (b + 1 == n and c == 0):
            self.stats.bump("adjacent")
            return KILL_C
        if c1 == b or not _chases(P, b, c1):
            self.stats.bump("nonchasing")
            return KILL_B
        b1 = b + 1 if b + 1 < n else 0

        fused = self._tangents_fused(b, b1, c, c1)
        if fused is None:
            self.stats.bump("fused_bailout")
            hgx, hgy, hg_ax, hg_ay, ghx, ghy, gh_ax, gh_ay = self._tangents_modular(
                b, b1, c, c1
            )
        else:
            hgx, hgy, hg_ax, hg_ay, ghx, ghy, gh_ax, gh_ay = fused
        return self._decide(b, c, hgx, hgy, hg_ax, hg_ay, ghx, ghy, gh_ax, gh_ay)

    def _tangents_modular(self, b: int, b1: int, c: int, c1: int):
        """Reference path through the hyperbola module (also the fallback for
        configurations the fused path declines)."""
        P = self.P
        g_plus = corner_branch(P, c1, b, "+")
        h_plus = corner_branch(P, c1, b1, "+")
        g_minus = corner_branch(P, b1, c1, "-")
        h_minus = corner_branch(P, b1, c, "-")
        l_from = P.line(c1)
        l_to = P.line(b)
        bracket = (
            cw_angle(-P.dxs[b1], -P.dys[b1]),  # direction of L1 at v_{c+1}
            cw_angle(-P.dxs[c], -P.dys[c]),  # direction of L2 at v_{b+1}
        )
        l_hg = common_tangent(h_plus, g_minus, (l_from, l_to), bracket)
        l_gh = common_tangent(g_plus, h_minus, (l_from, l_to), bracket)
        return (
            l_hg.dx, l_hg.dy, l_hg.anchor[0], l_hg.anchor[1],
            l_gh.dx, l_gh.dy, l_gh.anchor[0], l_gh.anchor[1],
        )

    def _tangents_fused(self, b: int, b1: int, c: int, c1: int):
        """Straight-line float path computing both oriented common tangents;
        returns None whenever anything is out of the ordinary."""
        P = self.P
        xs, ys, dxs, dys = P.xs, P.ys, P.dxs, P.dys
        o1x, o1y = xs[c1], ys[c1]
        o2x, o2y = xs[b1], ys[b1]
        dcx, dcy = dxs[c], dys[c]
        dc1x, dc1y = dxs[c1], dys[c1]
        dbx, dby = dxs[b], dys[b]
        db1x, db1y = dxs[b1], dys[b1]
        u2x, u2y = -dbx, -dby
        v2x, v2y = -db1x, -db1y
        x1 = dcx * dc1y - dcy * dc1x
        x2 = dbx * db1y - dby * db1x
        if abs(x1) < 1e-12 or abs(x2) < 1e-12:
            return None

        # The four quadrant-cut areas from the pairwise line intersections.
        xb, yb = xs[b], ys[b]
        xb1, yb1 = xs[b1], ys[b1]
        den = dbx * dcy - dby * dcx
        if den == 0.0:
            return None
        tpar = ((xs[c] - xb) * dcy - (ys[c] - yb) * dcx) / den
        pbc_x, pbc_y = xb + tpar * dbx, yb + tpar * dby
        den = dbx * dc1y - dby * dc1x
        if den == 0.0:
            return None
        tpar = ((o1x - xb) * dc1y - (o1y - yb) * dc1x) / den
        pbc1_x, pbc1_y = xb + tpar * dbx, yb + tpar * dby
        den = db1x * dcy - db1y * dcx
        if den == 0.0:
            return None
        tpar = ((xs[c] - xb1) * dcy - (ys[c] - yb1) * dcx) / den
        pb1c_x, pb1c_y = xb1 + tpar * db1x, yb1 + tpar * db1y
        den = db1x * dc1y - db1y * dc1x
        if den == 0.0:
            return None
        tpar = ((o1x - xb1) * dc1y - (o1y - yb1) * dc1x) / den
        pb1c1_x, pb1c1_y = xb1 + tpar * db1x, yb1 + tpar * db1y

        s_gp = 0.5 * abs(
            (pbc_x - o1x) * (pbc1_y - o1y) - (pbc_y - o1y) * (pbc1_x - o1x)
        )
        s_hp = 0.5 * abs(
            (pb1c_x - o1x) * (pb1c1_y - o1y) - (pb1c_y - o1y) * (pb1c1_x - o1x)
        )
        s_gm = 0.5 * abs(
            (pbc1_x - o2x) * (pb1c1_y - o2y) - (pbc1_y - o2y) * (pb1c1_x - o2x)
        )
        s_hm = 0.5 * abs(
            (pbc_x - o2x) * (pb1c_y - o2y) - (pbc_y - o2y) * (pb1c_x - o2x)
        )
        if not (s_gp > 0.0 and s_hp > 0.0 and s_gm > 0.0 and s_hm > 0.0):
            return None
        ax1 = abs(x1)
        ax2 = abs(x2)
        c_gp = s_gp / (2.0 * ax1)
        c_hp = s_hp / (2.0 * ax1)
        c_gm = s_gm / (2.0 * ax2)
        c_hm = s_hm / (2.0 * ax2)

        # Frame transform shared by both tangent pairs (and the chord seed).
        dxo, dyo = o2x - o1x, o2y - o1y
        g0 = (dxo * dc1y - dyo * dc1x) / x1
        g1 = (u2x * dc1y - u2y * dc1x) / x1
        g2 = (v2x * dc1y - v2y * dc1x) / x1
        h0 = (dcx * dyo - dcy * dxo) / x1
        h1_ = (dcx * u2y - dcy * u2x) / x1
        h2_ = (dcx * v2y - dcy * v2x) / x1

        lo_ang = math.atan2(db1y, -db1x) % TWO_PI  # cw_angle(-db1)
        hi_ang = math.atan2(dcy, -dcx) % TWO_PI  # cw_angle(-dc)
        span = (hi_ang - lo_ang) % TWO_PI

        out = []
        for ca, cb, sb in ((c_hp, c_gm, s_gm), (c_gp, c_hm, s_hm)):
            sol = _fused_pair_tangent(
                o1x, o1y, dcx, dcy, dc1x, dc1y, ca,
                o2x, o2y, u2x, u2y, v2x, v2y, cb, sb, 0.5 * ax2,
                g0, g1, g2, h0, h1_, h2_, lo_ang, span,
            )
            if sol is None:
                return None
            out.extend(sol)
        return tuple(out)

    def _decide(self, b, c, hgx, hgy, hg_ax, hg_ay, ghx, ghy, gh_ax, gh_ay) -> str:
        P = self.P
        off_hg = self._offset_raw(cw_angle(hgx, hgy))
        off_gh = self._offset_raw(cw_angle(ghx, ghy))
        if off_hg > off_gh + ANG_TOL:
            raise SolverInvariantError(
                f"tangent interval inverted at ({b},{c}): {off_hg} > {off_gh}"
            )
        if off_hg < -ANG_TOL or off_gh > self.d2_off + ANG_TOL:
            raise SolverInvariantError(
                f"tangent interval [{off_hg}, {off_gh}] outside [0, {self.d2_off}]"
            )

        # Direction selection: keep the previous direction while it stays in
        # the interval, otherwise jump up to its lower end.
        if self.d_off > off_gh + ANG_TOL:
            raise DMonotonicityViolated(
                f"direction {self.d_off} above interval [{off_hg}, {off_gh}] at ({b},{c})"
            )
        if self.d_off < off_hg - ANG_TOL:
            self.d_off = off_hg
            self.d_vx, self.d_vy = hgx, hgy

        # Comparison line through the tangent crossing with the selected
        # direction; parallel tangents collapse onto the lower tangent.
        denom = hgx * ghy - hgy * ghx
        if abs(denom) < 1e-9:
            ax, ay = hg_ax, hg_ay
        else:
            t = ((gh_ax - hg_ax) * ghy - (gh_ay - hg_ay) * ghx) / denom
            ax, ay = hg_ax + t * hgx, hg_ay + t * hgy

        v_idx = self.support.serve(self.d_off, self.d_vx, self.d_vy)
        cr = self.d_vx * (P.ys[v_idx] - ay) - self.d_vy * (P.xs[v_idx] - ax)
        if cr < -P.abs_tol():
            self.stats.bump("tangent_kill_b")
            return KILL_B
        self.stats.bump("tangent_kill_c")
        return KILL_C


class StableBounds(NamedTuple):
    """First/last apexes bounding one-sided stability for a pair (j, k).

    x: first apex making edge j back-stable (always exists).
    x_last: last apex keeping edge j forw-stable, else edge k as sentinel.
    y: first apex making edge k back-stable, else edge j as sentinel.
    y_last: last apex keeping edge k forw-stable (always exists).
    All are edge indices; order them with positions relative to an anchor.
    """

    x: int
    x_last: int
    y: int
    y_last: int


def stable_bounds(P: ConvexPolygon, j: int, k: int) -> StableBounds:
    """Binary-searched stability bounds over the apex arc of the pair (j, k).

    Each one-sided predicate is monotone along the arc (a cut of the minus
    quadrant shrinks and a cut of the plus quadrant grows as the apex
    advances), which is what makes the O(log n) criterion possible.
    """
    n = P.n
    j %= n
    k %= n
    if not _chases(P, j, k):
        raise SolverInvariantError(f"stable_bounds needs edge {j} chasing edge {k}")
    count = ((j - k) % n) - 1
    if count <= 0:
        raise SolverInvariantError(f"pair ({j}, {k}) has an empty apex arc")

    def edge_at(pos: int) -> int:
        e = k + pos
        return e - n if e >= n else e

    def first_true(pred) -> int | None:
        if not pred(count):
            return None
        lo, hi = 1, count
        while lo < hi:
            mid = (lo + hi) // 2
            if pred(mid):
                hi = mid
            else:
                lo = mid + 1
        return lo

    def last_true(pred) -> int | None:
        if not pred(1):
            return None
        lo, hi = 1, count
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if pred(mid):
                lo = mid
            else:
                hi = mid - 1
        return lo

    j1 = j + 1 if j + 1 < n else 0
    k1 = k + 1 if k + 1 < n else 0
    cp_kj = _corner_plus(P, k, j)
    cp_kj1 = _corner_plus(P, k, j1)
    cm_jk = _corner_minus(P, j, k)
    cm_jk1 = _corner_minus(P, j, k1)
    rel = 1.0 + 1e-9

    x = first_true(
        lambda pos: _chases(P, edge_at(pos), j)
        and _corner_minus(P, edge_at(pos), j) <= cp_kj * rel
    )
    x_last = last_true(lambda pos: cp_kj1 <= _corner_minus(P, edge_at(pos), j1) * rel)
    y = first_true(lambda pos: cm_jk <= _corner_plus(P, edge_at(pos), k) * rel)
    y_last = last_true(
        lambda pos: _chases(P, k, edge_at(pos))
        and _corner_plus(P, edge_at(pos), k1) <= cm_jk1 * rel
    )
    if x is None or y_last is None:
        raise SolverInvariantError(f"degenerate stability bounds for ({j}, {k})")
    return StableBounds(
        x=edge_at(x),
        x_last=edge_at(x_last) if x_last is not None else k,
        y=edge_at(y) if y is not None else j,
        y_last=edge_at(y_last),
    )


def _fused_pair_tangent(
    o1x, o1y, u1x, u1y, v1x, v1y, ca,
    o2x, o2y, u2x, u2y, v2x, v2y, cb, sb, half_x2,
    g0, g1, g2, h0, h1_, h2_, lo_ang, span,
):
    """One oriented common tangent for a branch pair, computed with raw
    floats: quartic (or chord) seeds, secant gate on the cut-area residual,
    branch-arc positivity, apex-side and direction-bracket selection.

    Returns (dir_x, dir_y, anchor_x, anchor_y) or None to defer to the
    modular path.
    """
    coef4 = h0 * h0 - 4.0 * cb * h1_ * h2_
    coef3 = -4.0 * ca * h0
    coef2 = 4.0 * ca * ca + 2.0 * ca * g0 * h0 - 4.0 * cb * ca * (g1 * h2_ + g2 * h1_)
    coef1 = -4.0 * ca * ca * g0
    coef0 = ca * ca * (g0 * g0 - 4.0 * cb * g1 * g2)
    mag4 = h0 * h0 + abs(4.0 * cb * h1_ * h2_)
    mag2 = 4.0 * ca * ca + abs(2.0 * ca * g0 * h0) + abs(
        4.0 * cb * ca * (g1 * h2_ + g2 * h1_)
    )
    mag0 = ca * ca * (g0 * g0 + abs(4.0 * cb * g1 * g2))
    reliable = (
        abs(coef4) >= 1e-7 * mag4
        and abs(coef2) >= 1e-7 * mag2
        and abs(coef0) >= 1e-7 * mag0
    )

    def residual(tt):
        if not tt > 0.0:
            return INF
        beta_ = ca / tt
        px_ = o1x + tt * u1x + beta_ * v1x
        py_ = o1y + tt * u1y + beta_ * v1y
        ddx_ = beta_ * v1x - tt * u1x
        ddy_ = beta_ * v1y - tt * u1y
        cu_ = u2x * ddy_ - u2y * ddx_
        cv_ = v2x * ddy_ - v2y * ddx_
        if cu_ == 0.0 or cv_ == 0.0:
            return INF
        w_ = (px_ - o2x) * ddy_ - (py_ - o2y) * ddx_
        tu_ = w_ / cu_
        tv_ = w_ / cv_
        if tu_ <= 0.0 or tv_ <= 0.0:
            return INF
        return tu_ * tv_ * half_x2 - sb

    def refine(t):
        tol = 1e-13 * sb
        g0v = residual(t)
        if g0v != g0v or g0v == INF:
            return t, INF
        if abs(g0v) <= tol:
            return t, abs(g0v)
        t0, t1 = t, t * (1.0 + 1e-8)
        g1v = residual(t1)
        if g1v == INF:
            return t, abs(g0v)
        best_t, best_g = (t0, abs(g0v)) if abs(g0v) <= abs(g1v) else (t1, abs(g1v))
        for _ in range(25):
            if g1v == g0v:
                break
            t2 = t1 - g1v * (t1 - t0) / (g1v - g0v)
            if not (t2 > 0.0) or t2 != t2 or abs(t2 - t1) > 0.5 * t1:
                break
            g2v = residual(t2)
            if g2v == INF or g2v != g2v:
                break
            t0, g0v, t1, g1v = t1, g1v, t2, g2v
            if abs(g2v) < best_g:
                best_t, best_g = t2, abs(g2v)
                if best_g <= tol:
                    break
            if abs(t1 - t0) <= 1e-15 * t1:
                break
        return best_t, best_g

    starts = []
    scale = math.sqrt(ca)
    if reliable:
        roots, seeds = _real_roots_quartic(
            coef4 * scale ** 4,
            coef3 * scale ** 3,
            coef2 * scale ** 2,
            coef1 * scale,
            coef0,
        )
        for tau in roots:
            t = tau * scale
            if t > 0.0:
                t = _polish_root(coef4, coef3, coef2, coef1, coef0, t)
                if t > 0.0:
                    starts.append(t)
        for tau in seeds:
            if tau > 0.0:
                starts.append(tau * scale)

    candidates: list[float] = []
    tried_chord = False
    while True:
        for start in starts:
            t, resid = refine(start)
            if not resid <= 1e-7 * sb:
                continue
            if any(abs(t - tt) <= 1e-6 * max(t, tt) for tt in candidates):
                continue
            candidates.append(t)
        if candidates or tried_chord:
            break
        pq = g0 * h0  # chord decomposition reuses the frame transform
        if pq >= 0.0:
            break
        lam = math.sqrt(ca / -pq)
        if h0 < 0.0:
            lam = -lam
        starts = [-lam * g0]
        tried_chord = True

    accepted = None
    for t in candidates:
        beta = ca / t
        px = o1x + t * u1x + beta * v1x
        py = o1y + t * u1y + beta * v1y
        ddx = beta * v1x - t * u1x
        ddy = beta * v1y - t * u1y
        cu = u2x * ddy - u2y * ddx
        cv = v2x * ddy - v2y * ddx
        if cu == 0.0 or cv == 0.0:
            continue
        w = (px - o2x) * ddy - (py - o2y) * ddx
        tu = w / cu
        tv = w / cv
        if not (tu > 0.0 and tv > 0.0):
            continue
        # Direction straight from the tangent construction (the crossing
        # difference only supplies its sign, which stays robust when the two
        # crossings nearly coincide).
        xfx = o1x + 2.0 * beta * v1x
        xfy = o1y + 2.0 * beta * v1y
        nrm = math.hypot(ddx, ddy)
        if nrm < 1e-300:
            continue
        dvx = ddx / nrm
        dvy = ddy / nrm
        sgn = dvx * ((o2x + tu * u2x) - xfx) + dvy * ((o2y + tu * u2y) - xfy)
        if sgn < 0.0:
            dvx = -dvx
            dvy = -dvy
        if dvx * (o1y - py) - dvy * (o1x - px) >= 0.0:
            continue
        if dvx * (o2y - py) - dvy * (o2x - px) >= 0.0:
            continue
        d = (math.atan2(-dvy, dvx) - lo_ang) % TWO_PI
        if not (d <= span + 1e-7 or d >= TWO_PI - 1e-7):
            continue
        if accepted is not None:
            return None  # ambiguous: let the modular path sort it out
        accepted = (dvx, dvy, px, py)
    return accepted


class _LognCriterion:
    """O(log n) kill decisions by binary search over stability prefixes."""

    __slots__ = ("P", "stats")

    def __init__(self, P: ConvexPolygon, stats: SolveStats):
        self.P = P
        self.stats = stats

    def kill(self, b: int, c: int) -> str:
        P = self.P
        n = P.n
        c1 = c + 1 if c + 1 < n else 0
        if b + 1 == c or (b + 1 == n and c == 0):
            self.stats.bump("adjacent")
            return KILL_C
        if c1 == b or not _chases(P, b, c1):
            self.stats.bump("nonchasing")
            return KILL_B

        xs, ys, dxs, dys, cum = P.xs, P.ys, P.dxs, P.dys, P.cum
        j, k = b, c1
        j1 = j + 1 if j + 1 < n else 0
        pos_j = (j - c) % n  # position of edge j in the order anchored at c
        lo, hi = 2, pos_j - 1  # apex arc positions

        # Corner-cut probes, inlined: area the half-plane of edge i cuts from
        # the quadrant at vertex m (between the lines of edges m-1 and m).
        def cut(i: int, m: int, want_chase_im: bool) -> float:
            m1 = m - 1 if m else n - 1
            d = cum[m] - cum[i] if want_chase_im else cum[i] - cum[m1]
            if d <= 0.0:
                d += TWO_PI
            if d >= math.pi:
                return INF
            xi, yi, dix, diy = xs[i], ys[i], dxs[i], dys[i]
            dmx, dmy = dxs[m1], dys[m1]
            den = dix * dmy - diy * dmx
            t = ((xs[m1] - xi) * dmy - (ys[m1] - yi) * dmx) / den
            ax, ay = xi + t * dix, yi + t * diy
            dmx, dmy = dxs[m], dys[m]
            den = dix * dmy - diy * dmx
            t = ((xs[m] - xi) * dmy - (ys[m] - yi) * dmx) / den
            bx, by = xi + t * dix, yi + t * diy
            vx, vy = xs[m], ys[m]
            return 0.5 * abs((ax - vx) * (by - vy) - (ay - vy) * (bx - vx))

        # x' for the pair (j, k): last apex keeping edge j forw-stable.
        cp_const = _corner_plus(P, k, j1)
        rel = 1.0 + 1e-9

        def forw_j(pos: int) -> bool:
            i = c + pos
            if i >= n:
                i -= n
            if i == j:  # zero cut; not reachable inside the arc
                return cp_const <= 0.0
            return cp_const <= cut(i, j1, True) * rel

        if lo > hi or not forw_j(lo):
            x_pos = 1  # sentinel: edge k itself
        else:
            a, bnd = lo, hi
            while a < bnd:
                mid = (a + bnd + 1) // 2
                if forw_j(mid):
                    a = mid
                else:
                    bnd = mid - 1
            x_pos = a

        # y for the pair (j, k): first apex making edge k back-stable.
        cm_const = _corner_minus(P, j, k)

        def back_k(pos: int) -> bool:
            i = c + pos
            if i >= n:
                i -= n
            if i == k:
                return cm_const <= 0.0
            return cm_const <= cut(i, k, False) * rel

        if lo > hi or not back_k(hi):
            y_pos = pos_j  # sentinel: edge j itself
        else:
            a, bnd = lo, hi
            while a < bnd:
                mid = (a + bnd) // 2
                if back_k(mid):
                    bnd = mid
                else:
                    a = mid + 1
            y_pos = a

        if x_pos < y_pos:
            self.stats.bump("logn_kill_b")
            return KILL_B
        self.stats.bump("logn_kill_c")
        return KILL_C


def rotate_and_kill(
    P: ConvexPolygon, criterion: str = "linear", record: bool = True
) -> SolverReport:
    """Enumerate every pair that can carry a 3-stable triangle and return the
    minimum-area one.

    ``criterion`` selects the kill decision procedure ('linear' or 'logn').
    With ``record=False`` the candidate list, kill trace and per-candidate
    stability flags are skipped (the minimum is unaffected).
    """
    if criterion not in ("linear", "logn"):
        raise ValueError(f"unknown criterion {criterion!r}")
    n = P.n
    stats = SolveStats()
    if record:
        stats.kills = []
    r, s, t = initial_3stable(P, stats)
    killer = (
        _LinearCriterion(P, s, r, stats)
        if criterion == "linear"
        else _LognCriterion(P, stats)
    )

    b, c = s, t
    apex_ptr = r
    candidates: list[Candidate] = []
    best_any: tuple[float, tuple[int, int, int]] | None = None
    best_stable: tuple[float, tuple[int, int, int]] | None = None

    len_j = ((t - s) % n) + 1
    len_k = ((r - t) % n) + 1
    max_iters = len_j + len_k

    while True:
        stats.iterations += 1
        if stats.iterations > max_iters:
            raise SolverInvariantError(
                f"sweep exceeded {max_iters} iterations (|J|+|K|)"
            )
        if ((b - c) % n) >= 2 and _chases(P, b, c):
            if P.far[b] == P.far[c]:
                a = (P.far[b] - 1) % n
                jump = (a - apex_ptr) % n
                stats.apex_advances += jump
                apex_ptr = a
            else:
                a, area, steps = advance_apex(P, b, c, apex_ptr)
                stats.apex_advances += steps
                apex_ptr = a
                key = (area, normalized_triple(n, a, b, c))
                if best_any is None or key < best_any:
                    best_any = key
                if record:
                    flag = _is_3stable_finite(P, a, b, c, area)
                    candidates.append(Candidate(a, b, c, area, flag))
                    if flag and (best_stable is None or key < best_stable):
                        best_stable = key
        else:
            stats.bump("pair_skipped")
        if b == t and c == r:
            break
        # Boundary rails: once c reaches r the set of pairs right of (b, c)
        # is empty, so killing b is unconditionally sound (and killing c
        # would skip live pairs); symmetrically once b reaches t.
        if c == r:
            decision = KILL_B
            stats.bump("boundary_kill_b")
        elif b == t:
            decision = KILL_C
            stats.bump("boundary_kill_c")
        else:
            decision = killer.kill(b, c)
        if stats.kills is not None:
            stats.kills.append((b, c, decision))
        if decision == KILL_B:
            b = b + 1 if b + 1 < n else 0
        else:
            c = c + 1 if c + 1 < n else 0

    if best_any is None:
        raise SolverInvariantError("sweep emitted no finite candidate")
    if record:
        if best_stable is None:
            raise SolverInvariantError("sweep emitted no 3-stable candidate")
        best = best_stable
    else:
        best = best_any

    if stats.apex_advances > 2 * n:
        raise SolverInvariantError(
            f"apex pointer advanced {stats.apex_advances} > 2n times"
        )
    if isinstance(killer, _LinearCriterion):
        if killer.support.advances > 2 * n:
            raise SolverInvariantError(
                f"support pointer advanced {killer.support.advances} > 2n times"
            )
        stats.support_advances = killer.support.advances
        stats.d_final = killer.d_off

    mft = triangle_of(P, *best[1])
    return SolverReport(
        algorithm=criterion,
        n=n,
        anchor=(r, s, t),
        mft=mft,
        candidates=candidates,
        stats=stats,
    )


def quadratic_scan(P: ConvexPolygon, cap: int = 4096) -> SolverReport:
    """O(n^2) reference: enumerate every pair in J x K with a per-row apex
    pointer instead of a killing criterion."""
    n = P.n
    if n > cap:
        raise InstanceTooLarge(f"n={n} exceeds the quadratic cap {cap}")
    stats = SolveStats()
    r, s, t = initial_3stable(P, stats)
    len_j = ((t - s) % n) + 1
    len_k = ((r - t) % n) + 1
    candidates: list[Candidate] = []
    best: tuple[float, tuple[int, int, int]] | None = None
    for bi in range(len_j):
        b = (s + bi) % n
        ptr: int | None = None
        for ci in range(len_k):
            c = (t + ci) % n
            if b == c or ((b - c) % n) < 2:
                continue
            if not _chases(P, b, c):
                break  # the turn only grows with c; no later pair chases
            if P.far[b] == P.far[c]:
                ptr = (P.far[b] - 1) % n
                continue
            a, area, _ = advance_apex(P, b, c, ptr if ptr is not None else (c + 1) % n)
            ptr = a
            flag = _is_3stable_finite(P, a, b, c, area)
            candidates.append(Candidate(a, b, c, area, flag))
            key = (area, normalized_triple(n, a, b, c))
            if flag and (best is None or key < best):
                best = key
    if best is None:
        raise SolverInvariantError("quadratic scan found no 3-stable candidate")
    return SolverReport(
        algorithm="quadratic",
        n=n,
        anchor=(r, s, t),
        mft=triangle_of(P, *best[1]),
        candidates=candidates,
        stats=stats,
    )


@dataclass
class BruteForceResult:
    mft_triple: tuple[int, int, int]
    mft_area: float
    stable_set: list[tuple[int, int, int]]
    dead: np.ndarray  # dead[b, c] == True when no apex makes (a, b, c) 3-stable


def brute_force(P: ConvexPolygon, cap: int = 256) -> BruteForceResult:
    """O(n^3) oracle over all clockwise triples (vectorized).

    Returns the minimum finite triangle, the full 3-stable set and the
    dead-pair table used to audit kill decisions.
    """
    n = P.n
    if n > cap:
        raise InstanceTooLarge(f"n={n} exceeds the brute-force cap {cap}")
    xs = np.asarray(P.xs)
    ys = np.asarray(P.ys)
    dx = np.asarray(P.dxs)
    dy = np.asarray(P.dys)
    cum = np.asarray(P.cum)

    turn = (cum[None, :] - cum[:, None]) % TWO_PI
    np.fill_diagonal(turn, 0.0)
    chases = (turn > 0.0) & (turn < math.pi)

    denom = dx[:, None] * dy[None, :] - dy[:, None] * dx[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        tnum = (xs[None, :] - xs[:, None]) * dy[None, :] - (
            ys[None, :] - ys[:, None]
        ) * dx[None, :]
        tpar = tnum / denom
    ix = xs[:, None] + tpar * dx[:, None]
    iy = ys[:, None] + tpar * dy[:, None]

    finite = (
        chases[:, :, None] & chases[None, :, :] & chases.T[:, None, :]
    )  # [a,b,c] = chases(a,b) & chases(b,c) & chases(c,a)
    px = ix[:, :, None]  # I(a,b)
    py = iy[:, :, None]
    qx = ix[None, :, :]  # I(b,c)
    qy = iy[None, :, :]
    rx = ix.T[:, None, :]  # I(c,a)
    ry = iy.T[:, None, :]
    with np.errstate(invalid="ignore"):
        area3 = 0.5 * np.abs(
            (qx - px) * (ry - py) - (qy - py) * (rx - px)
        )
    area3 = np.where(finite, area3, np.inf)

    with np.errstate(invalid="ignore"):
        m_a = np.min(area3, axis=0)  # best apex for pair (b, c)
        m_b = np.min(area3, axis=1)
        m_c = np.min(area3, axis=2)
    tol = 1e-9
    stable3 = (
        finite
        & (area3 <= m_a[None, :, :] * (1 + tol))
        & (area3 <= m_b[:, None, :] * (1 + tol))
        & (area3 <= m_c[:, :, None] * (1 + tol))
    )
    dead = ~stable3.any(axis=0)

    idx = np.argwhere(stable3)
    seen = set()
    stable_set = []
    for a, b, c in idx:
        tri = normalized_triple(n, int(a), int(b), int(c))
        if tri not in seen:
            seen.add(tri)
            stable_set.append(tri)
    stable_set.sort()

    flat = int(np.argmin(area3))
    a0, b0, c0 = np.unravel_index(flat, area3.shape)
    mft_area = float(area3[a0, b0, c0])
    if not math.isfinite(mft_area):
        raise SolverInvariantError("no finite all-flush triangle exists")
    return BruteForceResult(
        mft_triple=normalized_triple(n, int(a0), int(b0), int(c0)),
        mft_area=mft_area,
        stable_set=stable_set,
        dead=dead,
    )


def solve_mft(P: ConvexPolygon, algo: str = "linear") -> FlushTriangle:
    """Minimum-area all-flush triangle via the selected algorithm."""
    if algo in ("linear", "logn"):
        return rotate_and_kill(P, criterion=algo, record=False).mft
    if algo == "quadratic":
        return quadratic_scan(P).mft
    if algo == "brute":
        res = brute_force(P)
        return triangle_of(P, *res.mft_triple)
    raise ValueError(f"unknown algorithm {algo!r}")
