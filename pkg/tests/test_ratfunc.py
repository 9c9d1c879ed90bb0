from fractions import Fraction
import math

import pytest

from qindex.errors import ParseError
from qindex.ratfunc import (RationalFunction, complex_roots_of, irreducible_factors, qq_poly,
                            real_roots_of)


def test_normalized_and_reduced():
    f = RationalFunction.from_coeffs([-1, 0, 1], [2, 2])  # (t^2 - 1) / (2t + 2)
    assert f.coeffs() == ([Fraction(-1, 2), Fraction(1, 2)], [Fraction(1)])
    assert f(3) == 1


def test_from_roots_and_orders():
    f = RationalFunction.from_roots(3, [1, 1], [Fraction(1, 2)])
    assert f(0) == -6
    assert f.degree_at_infinity == -1
    with pytest.raises(ZeroDivisionError):
        f(Fraction(1, 2))


def test_json_roundtrip():
    f = RationalFunction.from_coeffs(["1/3", "-2"], ["5", "0", "1"])
    assert RationalFunction.from_json(f.to_json()) == f


@pytest.mark.parametrize("num,den", [([0], [1]), ([1], [0])])
def test_rejects_zero(num, den):
    with pytest.raises(ParseError):
        RationalFunction.from_coeffs(num, den)


def test_derivative():
    f = RationalFunction.from_coeffs([0, 0, 1], [1, 1])  # t^2 / (1 + t)
    d = f.derivative()
    assert d(1) == Fraction(3, 4)
    assert f * f.inverse() == RationalFunction.from_coeffs([1])


def test_root_isolation():
    (f, e), = irreducible_factors(qq_poly([-2, 0, 1]))
    assert e == 1
    roots = real_roots_of(f)
    assert len(roots) == 2
    for r in roots:
        assert r.hi - r.lo <= Fraction(1, 10**12)
        assert abs(abs(r.value) - math.sqrt(2)) < 1e-11
        assert abs(float(r.mp_value()) ** 2 - 2) < 1e-14
    assert real_roots_of(qq_poly([3, 2]))[0].exact == Fraction(-3, 2)


def test_conjugate_pairs():
    (f, _), = irreducible_factors(qq_poly([1, 0, 1]))
    zs = sorted(complex_roots_of(f), key=lambda z: z.imag)
    assert len(zs) == 2 and abs(zs[0] + 1j) < 1e-12 and abs(zs[1] - 1j) < 1e-12
    assert real_roots_of(f) == []


def test_factor_multiplicities():
    facs = irreducible_factors(qq_poly([0, 0, 1]) * qq_poly([1, 1]))
    assert sorted(e for _, e in facs) == [1, 2]
