import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qindex.errors import DegeneratePolygon
from qindex.lattice import (LatticePoint, LatticePolygon, boundary_lattice_count, contains, cross,
                            double_area, implied_polygon, interior_lattice_count, lattice_points,
                            primitive, sides)

D1 = LatticePolygon.simplex(1)
D2 = LatticePolygon.simplex(2)
D3 = LatticePolygon.simplex(3)
SQ = LatticePolygon.rectangle(1, 1)


def test_simplex2_sides():
    ss = sides(D2)
    assert [s.int_length for s in ss] == [2, 2, 2]
    assert [tuple(s.normal) for s in ss] == [(0, -1), (1, 1), (-1, 0)]


def test_square_normals():
    assert [tuple(s.normal) for s in sides(SQ)] == [(0, -1), (1, 0), (0, 1), (-1, 0)]


@pytest.mark.parametrize("poly,area2,m,g", [
    (D1, 1, 3, 0), (D2, 4, 6, 0), (D3, 9, 9, 1), (SQ, 2, 4, 0),
    (LatticePolygon.simplex(4), 16, 12, 3),
])
def test_counts(poly, area2, m, g):
    assert double_area(poly) == area2
    assert boundary_lattice_count(poly) == m
    assert interior_lattice_count(poly) == g


def test_normalization():
    p = LatticePolygon([(0, 2), (0, 0), (1, 0), (2, 0)])  # clockwise, collinear point
    assert [tuple(v) for v in p.vertices] == [(0, 0), (2, 0), (0, 2)]
    assert p == D2


@pytest.mark.parametrize("verts", [
    [(0, 0), (1, 1), (2, 2)],
    [(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)],
    [(0, 0), (1, 0)],
    [(0, 0), (1.5, 0), (0, 1)],
])
def test_degenerate(verts):
    with pytest.raises(DegeneratePolygon):
        LatticePolygon(verts)


def test_json_roundtrip():
    assert LatticePolygon.from_json(D3.to_json()) == D3


def test_primitive():
    assert primitive((4, -6)) == (LatticePoint(2, -3), 2)
    assert primitive((0, 5)) == (LatticePoint(0, 1), 5)


def test_implied_polygon_line():
    p = implied_polygon([(-1, 0), (0, -1), (1, 1)])
    assert p.same_shape(D1)


def _hull(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross((out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                                          (p[0] - out[-2][0], p[1] - out[-2][1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lo, hi = half(pts), half(pts[::-1])
    return lo[:-1] + hi[:-1]


points = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=9)


@settings(max_examples=150, deadline=None)
@given(points)
def test_pick_against_scan(pts):
    hull = _hull(pts)
    if len(hull) < 3:
        return
    poly = LatticePolygon(hull)
    all_pts = list(lattice_points(poly))
    interior = [p for p in all_pts if contains(poly, p, strict=True)]
    boundary = len(all_pts) - len(interior)
    assert boundary == boundary_lattice_count(poly)
    assert len(interior) == interior_lattice_count(poly)
    assert double_area(poly) == 2 * len(interior) + boundary - 2


@settings(max_examples=100, deadline=None)
@given(points)
def test_sides_close_up(pts):
    hull = _hull(pts)
    if len(hull) < 3:
        return
    ss = sides(LatticePolygon(hull))
    tangent_sum = [0, 0]
    for s in ss:
        assert math.gcd(abs(s.normal.a), abs(s.normal.b)) == 1
        t, _ = primitive(s.end - s.start)
        assert s.normal.a * t.a + s.normal.b * t.b == 0
        assert cross(t, s.normal) < 0  # outward: the normal is t turned clockwise
        tangent_sum[0] += s.int_length * t.a
        tangent_sum[1] += s.int_length * t.b
    assert tangent_sum == [0, 0]
