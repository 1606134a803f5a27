import math

import numpy as np
import pytest

from flushtri.errors import (
    CollinearVertices,
    GenerationFailed,
    NonMonotoneDirection,
    NotConvex,
    ParallelEdges,
    SameEdge,
    TooFewVertices,
)
from flushtri.geometry import Side, cw_angle, side_of
from flushtri.polygon import SupportPointer, generate_random, validate
from flushtri.triangles import area_of_triple

from conftest import Q4_VERTS


def test_validate_q4(q4):
    assert q4.n == 4
    assert q4.area == pytest.approx(21.0)
    assert not q4.reversed_input


def test_counterclockwise_reversed():
    p = validate(list(reversed(Q4_VERTS)))
    assert p.reversed_input
    assert p.area == pytest.approx(21.0)
    # clockwise after normalization: every vertex right of every edge line
    for i in range(p.n):
        ln = p.line(i)
        for v in p.vertices:
            assert side_of(ln, v, tol=1e-9) is not Side.LEFT


def test_unit_square_rejected():
    with pytest.raises(ParallelEdges):
        validate([(0, 0), (0, 1), (1, 1), (1, 0)])


def test_collinear_rejected():
    with pytest.raises(CollinearVertices):
        validate([(0, 0), (1, 0), (2, 0), (1, 1)])


def test_duplicate_vertex_rejected():
    with pytest.raises(CollinearVertices):
        validate([(0, 0), (0, 0), (1, 1), (2, 0)])


def test_too_few_vertices():
    with pytest.raises(TooFewVertices):
        validate([(0, 0), (1, 1)])


def test_reflex_rejected():
    with pytest.raises(NotConvex):
        validate([(0, 0), (4, 1), (2, 1.2), (0.5, 3)])


def test_perturb_recovers_collinear_input():
    p = validate([(0, 0), (1, 0), (2, 0), (1, 1)], perturb=True)
    assert p.n == 4


def test_chases_q4(q4):
    assert q4.chases(0, 1)
    assert not q4.chases(2, 0)
    with pytest.raises(SameEdge):
        q4.chases(1, 1)


def test_chases_consecutive_and_antisymmetric(tri, small_corpus):
    for p in [tri] + small_corpus[:40]:
        n = p.n
        for i in range(n):
            assert p.chases(i, (i + 1) % n)
        for i in range(n):
            for j in range(n):
                if i != j:
                    assert p.chases(i, j) != p.chases(j, i)


def test_chasing_three_cycle_exists(small_corpus):
    # For every edge i, the edges (i, D_i - 1, D_i) form a chasing cycle,
    # so a finite all-flush triangle through edge i always exists.
    for p in small_corpus[:40]:
        n = p.n
        for i in range(n):
            j = (p.far[i] - 1) % n
            k = p.far[i]
            assert area_of_triple(p, i, j, k) < math.inf


def test_farthest_q4(q4):
    # edge 3 runs along y = 0; vertex 1 at (2, 5) is farthest
    assert q4.far[3] == 1


def test_farthest_triangle(tri):
    for i in range(3):
        assert tri.far[i] == (i + 2) % 3  # the vertex not on edge i


def test_farthest_matches_exhaustive_argmax():
    for seed in range(200):
        p = generate_random(4 + seed % 61, seed)
        pts = p.as_vertex_array()
        for i in range(p.n):
            ax, ay = p.xs[i], p.ys[i]
            dx, dy = p.dxs[i], p.dys[i]
            d = -(dx * (pts[:, 1] - ay) - dy * (pts[:, 0] - ax))  # right distance
            assert int(np.argmax(d)) == p.far[i], (seed, i)


def test_support_line_q4(q4):
    ptr = SupportPointer(q4)
    line = ptr.support_line(0.0, 1.0, 0.0)
    assert line.anchor == (2.0, 5.0)
    for v in q4.vertices:
        assert side_of(line, v, tol=1e-9) is not Side.LEFT
    # (-1, 0) is parallel to the bottom edge: both bottom vertices give the
    # same support line y = 0 with the polygon above it
    ptr2 = SupportPointer(q4)
    line2 = ptr2.support_line(0.0, -1.0, 0.0)
    assert line2.anchor.y == 0.0 and line2.anchor.x in (0.0, 5.0)
    for v in q4.vertices:
        assert side_of(line2, v, tol=1e-9) is not Side.LEFT


def test_support_idempotent_and_monotone(small_corpus):
    p = small_corpus[10]
    ptr = SupportPointer(p)
    a = ptr.serve(0.0, 1.0, 0.0)
    assert ptr.serve(0.0, 1.0, 0.0) == a
    with pytest.raises(NonMonotoneDirection):
        ptr.serve(-1.0, 0.0, -1.0)


def test_support_sweep_budget(small_corpus):
    p = small_corpus[33]
    ptr = SupportPointer(p)
    steps = 64
    for k in range(steps + 1):
        ang = 2 * math.pi * k / steps
        wx, wy = math.cos(ang), -math.sin(ang)
        i = ptr.serve(ang, wx, wy)
        line = ptr.support_line(ang, wx, wy)
        for v in p.vertices:
            assert side_of(line, v, tol=p.abs_tol()) is not Side.LEFT
        assert i == ptr.idx
    assert ptr.advances <= 2 * p.n


def test_generate_deterministic():
    a = generate_random(64, 7)
    b = generate_random(64, 7)
    assert a.xs == b.xs and a.ys == b.ys
    assert a.n == 64


def test_generate_small_and_large():
    assert generate_random(3, 1).n == 3
    assert generate_random(1000, 9).n == 1000
    big = generate_random(8192, 3)  # direction-fan construction path
    assert big.n == 8192


def test_generate_rejects_tiny():
    with pytest.raises(GenerationFailed):
        generate_random(2, 0)


def test_cum_turns_increase_to_full_circle(small_corpus):
    for p in small_corpus[:20]:
        assert all(b > a for a, b in zip(p.cum, p.cum[1:]))
        last_turn = 2 * math.pi - p.cum[-1]
        assert 0 < last_turn < math.pi


def test_edge_lines_direction_convention(q4):
    # line(i) is directed along edge i, so its clockwise angle matches the
    # unit edge direction
    for i in range(q4.n):
        ln = q4.line(i)
        assert cw_angle(ln.dx, ln.dy) == pytest.approx(
            cw_angle(q4.dxs[i], q4.dys[i])
        )
