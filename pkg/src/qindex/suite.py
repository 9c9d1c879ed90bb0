"""Reference curves and a seeded generator of toric type I curves.

The conics are labelled by the sorted numbers of negative boundary points
per side, after reflecting so that both axes carry a positive point.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .ratfunc import RationalFunction
from .rational_curves import RealRationalCurve, fr2


def line(orientation: int = 1) -> RealRationalCurve:
    return RealRationalCurve.from_coeffs([0, 1], [1], [1, -1], [1], orientation)


def _conic(sx, sy, roots, orientation=1) -> RealRationalCurve:
    x = RationalFunction.from_roots(sx, roots[0:2], roots[4:6])
    y = RationalFunction.from_roots(sy, roots[2:4], roots[4:6])
    return RealRationalCurve(x, y, orientation)


# (label, expected k for orientation +1, curve)
CONICS = {
    "harnack": ((0, 0, 0), 2, lambda o=1: _conic(-1, -1, [-1, -2, 2, 0, 4, -4], o)),
    "row2_odd": ((0, 0, 2), -1, lambda o=1: _conic(1, 1, [-4, 1, 3, -1, -2, 2], o)),
    "row2_zero": ((0, 0, 2), 0, lambda o=1: _conic(1, -1, [0, -1, -3, 1, 3, 4], o)),
    "row3_odd": ((0, 1, 1), 1, lambda o=1: _conic(-1, 1, [2, 1, -4, -1, 0, -3], o)),
    "row3_zero": ((0, 1, 1), 0, lambda o=1: _conic(1, -1, [1, -3, 4, 2, 3, -2], o)),
}


def conic(name: str, orientation: int = 1) -> RealRationalCurve:
    return CONICS[name][2](orientation)


def circle(a, b, r, orientation: int = 1) -> RealRationalCurve:
    """Circle with centre (a, b) and radius r, through the rational parametrization."""
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    return RealRationalCurve.from_coeffs([a + r, 0, a - r], [1, 0, 1], [b, 2 * r, b], [1, 0, 1],
                                         orientation)


def nodal_cubic(x0, y0, poles, scale=1, orientation: int = 1) -> RealRationalCurve:
    """Cubic with an isolated real double point at (x0, y0).

    Lines of slope s through the node meet u² + v² + c(u, v) = 0 once more,
    with c(1, s) = scale * prod(s - p).
    """
    c = RationalFunction.from_roots(scale, (), ()).num
    for p in poles:
        c = c * RationalFunction.from_roots(1, [p]).num
    one_s2 = RationalFunction.from_coeffs([1, 0, 1]).num
    s = RationalFunction.from_coeffs([0, 1]).num
    x0, y0 = Fraction(x0), Fraction(y0)
    xn = c * RationalFunction.from_coeffs([x0]).num - one_s2
    yn = c * RationalFunction.from_coeffs([y0]).num - s * one_s2
    return RealRationalCurve(RationalFunction(xn, c), RationalFunction(yn, c), orientation)


NODAL_CUBICS = {
    "acnode_a": dict(x0=-2, y0=-2, poles=(0, 2, -2), scale=2),
    "acnode_b": dict(x0=1, y0=-1, poles=(-1, 3, -4), scale=1),
}


def random_toric_curve(rng: random.Random, degree: int | None = None) -> RealRationalCurve:
    """Curve of degree ≤ 3 with random distinct real boundary points.

    Each side of the triangle of size d gets d points.  The parameters are
    small rationals, so every boundary point is real.
    """
    d = degree or rng.randint(1, 3)
    pool = set()
    while len(pool) < 3 * d:
        pool.add(Fraction(rng.randint(-40, 40), rng.choice((1, 2, 3, 4))))
    params = rng.sample(sorted(pool), 3 * d)
    on_y_axis, on_x_axis, at_inf = params[:d], params[d:2 * d], params[2 * d:]
    sx = Fraction(rng.choice((-1, 1)) * rng.randint(1, 5), rng.randint(1, 3))
    sy = Fraction(rng.choice((-1, 1)) * rng.randint(1, 5), rng.randint(1, 3))
    x = RationalFunction.from_roots(sx, on_y_axis, at_inf)
    y = RationalFunction.from_roots(sy, on_x_axis, at_inf)
    return RealRationalCurve(x, y, rng.choice((-1, 1)))


def random_suite(seed: int, n: int = 20) -> list[RealRationalCurve]:
    rng = random.Random(seed)
    return [random_toric_curve(rng) for _ in range(n)]


def curve_suite(seed: int = 0, n_random: int = 6) -> dict[str, RealRationalCurve]:
    """Named curves used by ``verify``: toric type I, all boundary points real."""
    out = {"line": line(), "line_reversed": line(-1)}
    for name in CONICS:
        out[f"conic_{name}"] = conic(name)
    out["conic_harnack_fr2"] = fr2(conic("harnack"))
    for name, kw in NODAL_CUBICS.items():
        out[f"cubic_{name}"] = nodal_cubic(**kw)
    for i, c in enumerate(random_suite(seed, n_random)):
        out[f"random_{i}"] = c
    return out


# A quartic-style boundary sequence whose index diagram cannot be built:
# twelve arcs with the side normals of the size-4 triangle, where the
# quadrant of the fifth arc contradicts the accumulated parity.
QUARTIC_NOT_TORIC = {
    "quadrants": [[1, 1], [1, -1], [1, 1], [-1, 1], [-1, -1], [1, -1],
                  [1, 1], [-1, 1], [1, 1], [1, -1], [-1, -1], [-1, 1]],
    "edges": [[0, -1], [0, -1], [-1, 0], [1, 1], [0, -1], [-1, 0],
              [1, 1], [-1, 0], [0, -1], [1, 1], [-1, 0], [1, 1]],
}
