import math
from fractions import Fraction

import pytest

from qindex.checks import CIRCLES_FOUR, CIRCLES_ORIGIN
from qindex.errors import InputError
from qindex.numerics import (PI2, area_log, co_ab_check, rot_log, snap_half, solitary_points,
                             two_arg_degree, verify_quantization)
from qindex.rational_curves import (fr2, index_diagram, nonzero_linking_points,
                                    quantum_index_combinatorial, welschinger_sign)
from qindex.suite import CONICS, NODAL_CUBICS, circle, conic, line, nodal_cubic, random_suite

CUBICS = {name: nodal_cubic(**kw) for name, kw in NODAL_CUBICS.items()}


def test_snap_half():
    assert snap_half(0.49999) == Fraction(1, 2)
    assert snap_half(-1.0000003) == -1


@pytest.mark.parametrize("tol", [1e-4, 1e-6, 1e-8, 1e-10])
def test_line_area_within_tol(tol):
    a = area_log(line(), tol)
    assert abs(a.value - PI2 / 2) <= tol * PI2
    assert area_log(line(-1), tol).value == pytest.approx(-a.value)


@pytest.mark.parametrize("name", sorted(CONICS))
def test_conic_numeric_matches_diagram(name):
    c = conic(name)
    assert abs(area_log(c).k - float(quantum_index_combinatorial(c))) < 1e-4


@pytest.mark.parametrize("abr", CIRCLES_FOUR)
def test_circle_four_crossings(abr):
    k = area_log(circle(*abr)).k
    assert snap_half(k) in (-1, 0, 1) and abs(k - float(snap_half(k))) < 1e-4


@pytest.mark.parametrize("abr", CIRCLES_ORIGIN)
def test_circle_through_origin(abr):
    k = area_log(circle(*abr)).k
    assert abs(abs(k) - 0.5) < 1e-4


def test_rotation_examples():
    assert rot_log(line()) in (1, -1)
    assert rot_log(line(-1)) == -rot_log(line())
    assert rot_log(conic("harnack")) == -4


@pytest.mark.parametrize("curve", [line(), conic("row3_odd"), CUBICS["acnode_b"], circle(3, 3, 4)],
                         ids=["line", "conic", "cubic", "circle"])
def test_rotation_two_methods(curve):
    assert rot_log(curve) == rot_log(curve, method="turning")


def test_line_has_no_solitary_points():
    assert solitary_points(line()) == []


@pytest.mark.parametrize("name", sorted(CUBICS))
def test_nodal_cubic(name):
    c = CUBICS[name]
    sol = solitary_points(c)
    assert len(sol) == 1
    E = sol[0].sign
    rot = rot_log(c)
    k = quantum_index_combinatorial(c)
    assert Fraction(-rot, 2) + E == k
    welschinger_sign(c, rot, k, E)  # raises on inconsistency
    _, mism = co_ab_check(c)
    assert mism == {}


def test_solitary_lower_bound():
    c = fr2(conic("harnack"))
    assert len(solitary_points(c)) >= len(nonzero_linking_points(index_diagram(c)))


def test_co_ab_needs_transversal():
    with pytest.raises(InputError):
        co_ab_check(fr2(line()))


@pytest.mark.parametrize("curve,expected", [(line(), 1), (circle(1, 1, 2), 0), (conic("row3_odd"), 2)],
                         ids=["line", "circle", "conic"])
def test_two_arg_degree(curve, expected):
    assert {two_arg_degree(curve, seed=s) for s in (1, 2, 3)} == {expected}


def test_two_arg_reversal():
    assert two_arg_degree(line(-1), seed=4) == -1


def test_verify_quantization_random():
    for c in random_suite(77, 4):
        rep = verify_quantization(c)
        assert rep.ok, rep.failures
        assert rep.k_diagram == rep.k_numeric
        assert rep.to_json()["ok"]


def test_verify_quantization_fr2():
    rep = verify_quantization(fr2(conic("harnack")))
    assert rep.ok and rep.k_numeric == 8
