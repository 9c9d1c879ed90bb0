from fractions import Fraction

import pytest

from qindex.errors import EndpointOnCurve, NonRealBoundary, NotToricTypeI, PolygonMismatch
from qindex.lattice import LatticePoint, LatticePolygon, double_area
from qindex.rational_curves import (IndexDiagram, RealRationalCurve, boundary_divisor, curve_polygon,
                                    diagram_area, diagram_from_boundary_sequence, fr2, index_diagram,
                                    is_transversal, linking, negative_counts, nonzero_linking_points,
                                    path_to, quadrant_linking, quantum_index_combinatorial,
                                    refined_path_count, welschinger_sign)
from qindex.suite import CONICS, QUARTIC_NOT_TORIC, circle, conic, curve_suite, line, nodal_cubic, NODAL_CUBICS

P = LatticePoint


def square_diagram(times=1):
    vs = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)] * times
    es = [P(1, 0), P(0, 1), P(-1, 0), P(0, -1)] * times
    return IndexDiagram(tuple(vs), tuple(es))


def test_line_boundary():
    pts = boundary_divisor(line())
    assert [b.to_json()["param"] for b in pts] == ["0", "1", "inf"]
    assert [tuple(b.order_vec) for b in pts] == [(1, 0), (0, 1), (-1, -1)]
    assert all(b.mult == 1 for b in pts) and is_transversal(line())
    assert curve_polygon(line()).same_shape(LatticePolygon.simplex(1))


def test_circle_boundary_is_complex():
    pts = boundary_divisor(circle(5, 5, 1))
    assert pts and all(b.kind == "complex" for b in pts)
    for b in pts:  # conjugate pairs
        assert any(abs(b.param.conjugate() - o.param) < 1e-12 for o in pts)
    with pytest.raises(NonRealBoundary):
        index_diagram(circle(5, 5, 1))


def test_multiplicity_two():
    c = RealRationalCurve.from_coeffs([0, 0, 1], [1], [1, -1], [1])
    b0 = boundary_divisor(c)[0]
    assert tuple(b0.order_vec) == (2, 0) and b0.mult == 2 and tuple(b0.normal) == (-1, 0)
    assert curve_polygon(c).same_shape(LatticePolygon([(0, 0), (1, 0), (0, 2)]))
    assert not is_transversal(c)


def test_declared_polygon_checked():
    c = RealRationalCurve.from_coeffs([0, 1], [1], [1, -1], [1], polygon=LatticePolygon.simplex(2))
    with pytest.raises(PolygonMismatch):
        curve_polygon(c)


def test_line_diagram():
    d = index_diagram(line())
    assert d.vertices == (P(0, 0), P(0, -1), P(1, 0))
    assert d.edges == (P(0, -1), P(1, 1), P(-1, 0))
    assert diagram_area(d) == Fraction(1, 2)
    r = index_diagram(line(-1))
    assert diagram_area(r) == Fraction(-1, 2)
    assert sorted(r.edges) == sorted(d.edges)
    assert r.vertices == (P(0, 0), P(-1, 0), P(0, 1))


def test_harnack_is_rotated_triangle():
    d = index_diagram(conic("harnack"))
    corners = {P(0, 0), P(-2, 0), P(-2, -2)}
    assert corners <= set(d.vertices)
    rotated = {P(v.b, -v.a) + P(-2, 0) for v in LatticePolygon.simplex(2).vertices}
    assert rotated == corners
    assert diagram_area(d) == 2 == Fraction(double_area(LatticePolygon.simplex(2)), 2)
    assert diagram_area(index_diagram(conic("harnack", -1))) == -2


def test_degenerate_diagram_area():
    d = IndexDiagram((P(0, 0), P(1, 1)), (P(1, 1), P(-1, -1)))
    assert diagram_area(d) == 0


@pytest.mark.parametrize("name", sorted(CONICS))
def test_conic_table(name):
    lam, k, _ = CONICS[name]
    c = conic(name)
    assert tuple(sorted(negative_counts(c))) == lam
    assert quantum_index_combinatorial(c) == k
    assert quantum_index_combinatorial(c.reversed()) == -k


def test_line_index():
    assert quantum_index_combinatorial(line()) == Fraction(1, 2)


def test_fr2():
    sq = fr2(line())
    assert sq.x == line().x ** 2 and sq.y == line().y ** 2
    d, d2 = index_diagram(line()), index_diagram(sq)
    assert d2.edges == tuple(e.scale(2) for e in d.edges)
    assert diagram_area(d2) == 4 * diagram_area(d)


def test_base_arc_normalization():
    for c in (line(), conic("row3_odd"), nodal_cubic(**NODAL_CUBICS["acnode_a"])):
        diags = {index_diagram(c, base_arc=i) for i in range(len(index_diagram(c).vertices))}
        assert len(diags) == 1


def test_quartic_sequence_rejected():
    with pytest.raises(NotToricTypeI) as info:
        diagram_from_boundary_sequence(QUARTIC_NOT_TORIC["quadrants"], QUARTIC_NOT_TORIC["edges"])
    assert info.value.step == 4


def test_linking_examples():
    sq = square_diagram()
    assert linking((Fraction(1, 2), Fraction(1, 3)), sq) == 1
    assert linking((3, -2), sq) == 0
    assert linking((Fraction(1, 2), Fraction(1, 3)), square_diagram(2)) == 2
    with pytest.raises(ValueError):  # the ray runs along an edge
        linking((Fraction(1, 2), Fraction(0)), sq, eps=(1, 0), strict=True)


def test_linking_independent_of_direction():
    d = index_diagram(fr2(conic("harnack")))
    dirs = [(1, Fraction(1, 7)), (-1, Fraction(3, 11)), (2, Fraction(-5, 3)), (Fraction(-1, 9), -1),
            (Fraction(13, 17), 1)]
    for a in range(-5, 2):
        for b in range(-5, 2):
            vals = {linking((Fraction(a) + Fraction(1, 3), Fraction(b) + Fraction(1, 5)), d, e) for e in dirs}
            assert len(vals) == 1


def test_quadrant_linking():
    d = index_diagram(line())
    assert quadrant_linking((1, 1), d) == linking((0, 0), d)
    assert quadrant_linking((-1, -1), d) == 0  # (1, -1) is the only odd point in the box
    d2 = index_diagram(fr2(conic("harnack")))
    for q in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        brute = sum(linking((a, b), d2) for a in range(-9, 9) for b in range(-9, 9)
                    if (a % 2, b % 2) == (0 if q[0] > 0 else 1, 0 if q[1] > 0 else 1))
        assert quadrant_linking(q, d2) == brute


def test_welschinger_line_and_conic():
    assert welschinger_sign(line(), rot=-1) == 1
    assert welschinger_sign(line(), rot=-1, k=Fraction(1, 2), E=0) == 1
    # a smooth conic of maximal index: m = 6 and Rot = -4
    assert welschinger_sign(conic("harnack"), rot=-4, k=2, E=0) == -1


def test_path_count_loop_and_crossing():
    c = line()
    start = (Fraction(1, 3), Fraction(1, 7))
    loop = [((1, 0), 3), ((0, 1), 3), ((-1, 0), 3), ((0, -1), 3)]
    assert refined_path_count(c, start, loop) == P(0, 0)
    one = refined_path_count(c, (Fraction(-3), Fraction(-2)), [((1, 1), 5)])
    assert one in {v for v in index_diagram(c).vertices} | {-v for v in index_diagram(c).vertices}
    assert one != P(0, 0)


def test_path_independence_line():
    c = line()
    a, b = (Fraction(-3), Fraction(-2)), (Fraction(2), Fraction(3))
    p1 = refined_path_count(c, a, path_to(a, b, [((0, 1), 3)]))
    p2 = refined_path_count(c, a, path_to(a, b, [((1, 2), Fraction(7, 3)), ((-1, 0), 1)]))
    assert p1 == p2


def test_endpoint_on_curve():
    # (log 1/2, log 1/2) is the image of t = 1/2
    import math
    start = (Fraction(-1), Fraction(-1))
    target = Fraction(math.log(0.5)).limit_denominator(10**15)
    with pytest.raises(EndpointOnCurve):
        refined_path_count(line(), start, [((1, 0), target + 1), ((0, 1), target + 1)])


def test_json_roundtrip():
    for c in curve_suite(3, n_random=3).values():
        assert RealRationalCurve.from_json(c.to_json()) == c
