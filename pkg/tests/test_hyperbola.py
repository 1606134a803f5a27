import math

import numpy as np
import pytest

from flushtri.errors import (
    HyperbolaPreconditionViolated,
    NoTangentWithDirection,
)
from flushtri.geometry import directed_line, intersect_lines
from flushtri.hyperbola import (
    Classification,
    _real_roots_quartic,
    branch,
    classify,
    common_tangent,
    common_tangents,
    corner_branch,
    cut_area,
    tangent_with_direction,
)
from flushtri.polygon import generate_random
from flushtri.solver import initial_3stable
from flushtri.triangles import _chases


@pytest.fixture(scope="module")
def unit_branch():
    # apex at the origin, axis asymptotes, tangent-cut area 2 (i.e. xy = 1)
    return branch((0, 0), (1, 0), (0, 1), 2.0)


def test_canonical_coefficient(unit_branch):
    assert unit_branch.c == 1.0
    assert unit_branch.S == 2.0 * unit_branch.c * abs(unit_branch.cross_uv)


def test_classify_trichotomy(unit_branch):
    tangent = directed_line((2, 0), -1, 1)  # x + y = 2
    low = directed_line((1, 0), -1, 1)  # x + y = 1
    high = directed_line((3, 0), -1, 1)  # x + y = 3
    assert classify(unit_branch, tangent) is Classification.TANGENT
    assert classify(unit_branch, low) is Classification.DISJOINT
    assert classify(unit_branch, high) is Classification.SECANT


def test_classify_parallel_asymptote_is_secant(unit_branch):
    assert classify(unit_branch, directed_line((0, 5), 1, 0)) is Classification.SECANT


def test_tangent_with_direction_slope_minus_one(unit_branch):
    t = tangent_with_direction(unit_branch, 1, -1)
    assert t.anchor.x == pytest.approx(1.0)
    assert t.anchor.y == pytest.approx(1.0)
    # crosses the asymptotes at (2, 0) and (0, 2)
    x_axis = directed_line((0, 0), 1, 0)
    y_axis = directed_line((0, 0), 0, 1)
    assert intersect_lines(t, x_axis).x == pytest.approx(2.0)
    assert intersect_lines(t, y_axis).y == pytest.approx(2.0)


def test_tangent_with_direction_slope_minus_four(unit_branch):
    t = tangent_with_direction(unit_branch, 1, -4)
    assert (t.anchor.x, t.anchor.y) == (pytest.approx(0.5), pytest.approx(2.0))
    assert classify(unit_branch, t) is Classification.TANGENT


def test_tangent_direction_outside_cone(unit_branch):
    with pytest.raises(NoTangentWithDirection):
        tangent_with_direction(unit_branch, 1, 1)


def test_tangent_area_constancy_randomized():
    # 1000 random branches x random tangency parameters; measure the cut
    # triangle through the generic line-intersection path
    rng = np.random.default_rng(12345)
    worst = 0.0
    for _ in range(1000):
        apex = tuple(rng.uniform(-5, 5, 2))
        ang_u = rng.uniform(0, 2 * math.pi)
        gap = rng.uniform(0.15, math.pi - 0.15)
        u = (math.cos(ang_u), math.sin(ang_u))
        v = (math.cos(ang_u + gap), math.sin(ang_u + gap))
        s_val = rng.uniform(0.01, 50.0)
        h = branch(apex, u, v, s_val)
        alpha = rng.uniform(0.05, 20.0)
        beta = h.c / alpha
        touch = (apex[0] + alpha * u[0] + beta * v[0],
                 apex[1] + alpha * u[1] + beta * v[1])
        tangent = directed_line(
            touch, beta * v[0] - alpha * u[0], beta * v[1] - alpha * u[1]
        )
        pu = intersect_lines(tangent, directed_line(apex, *u))
        pv = intersect_lines(tangent, directed_line(apex, *v))
        area = 0.5 * abs(
            (pu.x - apex[0]) * (pv.y - apex[1]) - (pu.y - apex[1]) * (pv.x - apex[0])
        )
        worst = max(worst, abs(area - s_val) / s_val)
        assert classify(h, tangent) is Classification.TANGENT
    assert worst <= 1e-9


def test_common_tangent_analytic_instance(unit_branch):
    mirrored = branch((1, 1), (-1, 0), (0, -1), 2.0)
    cands = common_tangents(unit_branch, mirrored)
    assert len(cands) == 2
    slopes = sorted(c.line.dy / c.line.dx for c in cands)
    expected = sorted([-(7 + 4 * math.sqrt(3)), -(7 - 4 * math.sqrt(3))])
    for got, want in zip(slopes, expected):
        assert got == pytest.approx(want, rel=1e-9)
    for c in cands:
        assert classify(unit_branch, c.line) is Classification.TANGENT
        assert classify(mirrored, c.line) is Classification.TANGENT


def test_corner_branch_preconditions(q4):
    with pytest.raises(HyperbolaPreconditionViolated):
        corner_branch(q4, 1, 0, "+")  # edge k-1 never defines the plus branch
    with pytest.raises(HyperbolaPreconditionViolated):
        corner_branch(q4, 0, 1, "-")  # edge 1 does not chase into vertex 0


def test_corner_branch_positive_area(q4):
    # the plus branch at vertex 3 w.r.t. edge 1 inherits the minus-quadrant
    # cut of area 34 as its tangent-cut constant
    h = corner_branch(q4, 3, 1, "+")
    assert h.S == pytest.approx(34.0, rel=1e-12)
    assert h.S > 0


def test_solver_pair_tangents_are_tangent():
    # walk solver-generated branch pairs and self-check via classify
    from flushtri.geometry import cw_angle
    from flushtri.solver import SolveStats, _LognCriterion

    for seed in (3, 11, 25):
        p = generate_random(9 + seed % 7, seed)
        n = p.n
        r, s, t = initial_3stable(p)
        crit = _LognCriterion(p, SolveStats())
        b, c = s, t
        checked = 0
        while not (b == t and c == r):
            c1 = (c + 1) % n
            if not (
                (b + 1) % n == c or c1 == b or not _chases(p, b, c1)
                or c == r or b == t
            ):
                b1 = (b + 1) % n
                h_plus = corner_branch(p, c1, b1, "+")
                g_minus = corner_branch(p, b1, c1, "-")
                bracket = (
                    cw_angle(-p.dxs[b1], -p.dys[b1]),
                    cw_angle(-p.dxs[c], -p.dys[c]),
                )
                line = common_tangent(
                    h_plus, g_minus, (p.line(c1), p.line(b)), bracket
                )
                assert classify(h_plus, line, rel=1e-6) is Classification.TANGENT
                assert classify(g_minus, line, rel=1e-6) is Classification.TANGENT
                checked += 1
            if c == r:
                decision = "B"
            elif b == t:
                decision = "C"
            else:
                decision = crit.kill(b, c)
            if decision == "B":
                b = (b + 1) % n
            else:
                c = (c + 1) % n
        assert checked > 0


def test_quartic_solver_against_numpy():
    rng = np.random.default_rng(77)
    for _ in range(500):
        true_roots = rng.normal(size=4) * rng.choice([0.01, 1.0, 100.0])
        coeffs = np.poly(true_roots)
        mine, _seeds = _real_roots_quartic(*coeffs)
        ref = sorted(np.roots(coeffs).real)
        assert len(mine) == 4
        for a, b in zip(sorted(mine), ref):
            assert a == pytest.approx(b, abs=1e-6 * (1 + abs(b)))


def test_cut_area_unbounded_cases(unit_branch):
    # a line crossing only ray extensions leaves an unbounded region
    away = directed_line((-3, 0), -1, 1)
    assert cut_area(unit_branch, away) == math.inf
