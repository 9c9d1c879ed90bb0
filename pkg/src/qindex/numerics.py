"""Numerical oracles for the quantum index.

* ``area_log``: the logarithmic area ½∮(u dv − v du), u = log|x|, v = log|y|,
  over the oriented real locus.  Work is done in the chart t = tan(θ/2) so the
  whole real parameter circle, ∞ included, is a bounded θ-interval.
* ``rot_log``: degree of the logarithmic Gauss map t ↦ [x'/x : y'/y].
* ``solitary_points``: non-real parameters z with x(z), y(z) real, i.e. the
  isolated real points of the curve, with their local intersection signs.
* ``two_arg_degree``: signed count of solutions of (2 arg x, 2 arg y) = target.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
import sympy as sp
from numpy.polynomial import polynomial as P2
from scipy.integrate import tanhsinh

from .errors import (ClusterUnresolved, DegenerateGauss, InputError, NotToricTypeI, QuadratureFailure,
                     SnapFailure, TargetDegenerate)
from .lattice import LatticePoint, double_area
from .ratfunc import T, to_fraction
from .rational_curves import (RealRationalCurve, boundary_divisor, curve_polygon, diagram_area,
                              index_diagram, is_transversal, linking)

log = logging.getLogger(__name__)

PI2 = math.pi ** 2


# ---------------------------------------------------------------- θ chart

class LogChart:
    """u(θ), v(θ) and their θ-derivatives as sums of elementary log terms.

    For a real boundary point at θ_j with orders (a_j, b_j) the term is
    a_j·log|sin((θ−θ_j)/2)|; ∞ sits at θ = π.  Non-real zeros and poles r
    contribute log|sin(θ/2) − r·cos(θ/2)|.
    """

    def __init__(self, curve: RealRationalCurve, points=None):
        pts = boundary_divisor(curve) if points is None else points
        self.curve = curve
        real = [b for b in pts if b.is_real]
        self.theta = np.array([math.pi if b.kind == "infinity" else float(2 * mpmath.atan(b.param.mp_value()))
                               for b in real])
        self.a = np.array([float(b.order_vec.a) for b in real])
        self.b = np.array([float(b.order_vec.b) for b in real])
        cx = [b for b in pts if not b.is_real]
        self.roots = np.array([b.param for b in cx], dtype=complex)
        self.ca = np.array([float(b.order_vec.a) for b in cx])
        self.cb = np.array([float(b.order_vec.b) for b in cx])
        lx = abs(float(to_fraction(curve.x.num.LC()) / to_fraction(curve.x.den.LC())))
        ly = abs(float(to_fraction(curve.y.num.LC()) / to_fraction(curve.y.den.LC())))
        finite = np.array([b.kind == "real" for b in real], dtype=bool)
        lc = np.log(np.abs(np.cos(self.theta[finite] / 2))) if finite.any() else np.zeros(0)
        self.cu = math.log(lx) - float(np.dot(self.a[finite], lc))
        self.cv = math.log(ly) - float(np.dot(self.b[finite], lc))
        order = np.argsort(self.theta)
        self.theta, self.a, self.b = self.theta[order], self.a[order], self.b[order]

    def terms(self, th, skip: int | None = None):
        """(u, u', v, v') at angles ``th``, leaving out singular term ``skip``."""
        th = np.asarray(th, dtype=float)
        shape = th.shape
        th = th.reshape(-1)
        u = np.full(th.shape, self.cu)
        v = np.full(th.shape, self.cv)
        du = np.zeros(th.shape)
        dv = np.zeros(th.shape)
        keep = np.ones(self.theta.size, dtype=bool)
        if skip is not None:
            keep[skip] = False
        if keep.any():
            a, b = self.a[keep], self.b[keep]
            d = (th[:, None] - self.theta[None, keep]) / 2
            s = np.log(np.abs(np.sin(d)))
            c = 0.5 / np.tan(d)
            u += s @ a
            v += s @ b
            du += c @ a
            dv += c @ b
        if self.roots.size:
            h = th[:, None] / 2
            w = np.sin(h) - self.roots[None, :] * np.cos(h)
            dw = 0.5 * np.cos(h) + 0.5 * self.roots[None, :] * np.sin(h)
            lw = np.log(np.abs(w))
            rw = (dw / w).real
            u += lw @ self.ca
            v += lw @ self.cb
            du += rw @ self.ca
            dv += rw @ self.cb
        return u.reshape(shape), du.reshape(shape), v.reshape(shape), dv.reshape(shape)

    def integrand(self, th):
        u, du, v, dv = self.terms(th)
        return 0.5 * (u * dv - v * du)

    def flank(self, j: int, side: int, s):
        """Flank integrand in s = log δ at θ = θ_j + side·δ, and its limit at s → −∞."""
        s = np.asarray(s, dtype=float)
        delta = np.exp(s)
        th = self.theta[j] + side * delta
        u, du, v, dv = self.terms(th, skip=j)
        a, b = self.a[j], self.b[j]
        ls = np.log(np.abs(np.sin(delta / 2)))
        # θ-derivative of ls times δ; tends to side as δ → 0
        lsd = side * 0.5 * delta / np.tan(delta / 2)
        g = 0.5 * (a * ls * dv * delta - b * ls * du * delta + (u * b - v * a) * lsd
                   + (u * dv - v * du) * delta)
        u0, _, v0, _ = self.terms(self.theta[j:j + 1], skip=j)
        lim = float(side * 0.5 * (u0[0] * b - v0[0] * a))
        return g, lim


@dataclass
class AreaResult:
    value: float
    error: float

    @property
    def k(self) -> float:
        return self.value / PI2

    @property
    def k_error(self) -> float:
        return self.error / PI2


def _integrate(f, lo, hi, atol, depth=0):
    res = tanhsinh(f, lo, hi, atol=atol, rtol=1e-14, maxlevel=10)
    if res.status == 0 and np.isfinite(res.integral):
        return float(res.integral), float(res.error)
    if depth >= 14:
        raise QuadratureFailure(f"no convergence on [{lo}, {hi}]")
    mid = 0.5 * (lo + hi)
    i1, e1 = _integrate(f, lo, mid, atol / 2, depth + 1)
    i2, e2 = _integrate(f, mid, hi, atol / 2, depth + 1)
    return i1 + i2, e1 + e2


def area_log(curve: RealRationalCurve, tol: float = 1e-6) -> AreaResult:
    """Logarithmic area of the oriented real locus with an error estimate."""
    chart = LogChart(curve)
    n = chart.theta.size
    if n == 0:
        return _area_closed(chart, tol, curve.orientation)
    gaps = np.diff(np.concatenate([chart.theta, chart.theta[:1] + 2 * math.pi]))
    if np.any(gaps <= 0):
        raise QuadratureFailure("coincident boundary parameters")
    s_lo = min(-60.0, math.log(gaps.min()) - 40.0)
    atol = tol * PI2 / (4 * n)
    total, err = 0.0, 0.0
    for j in range(n):
        half = gaps[j] / 2
        s_m = math.log(half)
        # flank leaving θ_j, and flank arriving at the next boundary point
        for idx, side in ((j, 1), ((j + 1) % n, -1)):
            lim = chart.flank(idx, side, np.array([s_lo]))[1]

            def f(s, idx=idx, side=side, lim=lim):
                return chart.flank(idx, side, s)[0] - lim

            val, e = _integrate(f, s_lo, s_m, atol)
            total += val + lim * s_m
            err += e
    return AreaResult(curve.orientation * total, err)


def _area_closed(chart: LogChart, tol: float, orientation: int) -> AreaResult:
    prev = None
    n = 64
    while n <= 1 << 18:
        th = -math.pi + 2 * math.pi * np.arange(n) / n
        val = float(np.sum(chart.integrand(th))) * 2 * math.pi / n
        if prev is not None and abs(val - prev) < tol * PI2 / 10:
            return AreaResult(orientation * val, abs(val - prev))
        prev = val
        n *= 2
    raise QuadratureFailure("periodic trapezoid rule did not converge")


def snap_half(x: float) -> Fraction:
    return Fraction(round(2 * x), 2)


# ---------------------------------------------------------------- Gauss map

def _gauss_polys(curve: RealRationalCurve):
    """Coprime polynomial direction field proportional to (x'/x, y'/y)."""
    p, q = curve.x.num, curve.x.den
    r, s = curve.y.num, curve.y.den
    d1 = (p.diff(T) * q - p * q.diff(T)) * r * s
    d2 = (r.diff(T) * s - r * s.diff(T)) * p * q
    g = sp.gcd(d1, d2)
    d1 = sp.Poly(sp.quo(d1, g), T, domain="QQ")
    d2 = sp.Poly(sp.quo(d2, g), T, domain="QQ")
    if d1.is_zero and d2.is_zero:
        raise DegenerateGauss("logarithmic Gauss map is undefined")
    return d1, d2


def _eps_stream(seed: int):
    rng = np.random.default_rng(seed)
    while True:
        q = int(rng.integers(101, 997))
        p = int(rng.integers(-3 * q, 3 * q))
        yield Fraction(1), Fraction(p, q)


def _mp(c):
    c = to_fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def _passages(curve: RealRationalCurve, eps, d1=None, d2=None):
    """Real t where the Gauss direction is parallel to ``eps``.

    Returns ``(t, local_sign, same_direction)`` with ``local_sign`` the sign
    of the angular velocity along increasing t; None if eps is not generic.
    """
    if d1 is None:
        d1, d2 = _gauss_polys(curve)
    e1 = sp.Rational(eps[0].numerator, eps[0].denominator)
    e2 = sp.Rational(eps[1].numerator, eps[1].denominator)
    f = d1 * e2 - d2 * e1
    if f.is_zero:
        return None
    if f.degree() < max(d1.degree(), d2.degree()):
        return None  # the direction at t = ∞ is parallel to eps
    if sp.gcd(f, f.diff(T)).degree() > 0:
        return None
    w = d1 * d2.diff(T) - d2 * d1.diff(T)
    wc = [_mp(c) for c in w.all_coeffs()]
    out = []
    for (lo, hi), _ in f.intervals(eps=sp.Rational(1, 10**14)):
        with mpmath.workdps(40):
            if lo == hi:
                t0 = _mp(lo)
            else:
                fc = [_mp(c) for c in f.all_coeffs()]
                t0 = mpmath.findroot(lambda z: mpmath.polyval(fc, z), (_mp(lo), _mp(hi)), solver="anderson")
            wv = mpmath.polyval(wc, t0)
        if wv == 0:
            return None
        t = float(t0)
        du = float(curve.dlogx.evalf(t))
        dv = float(curve.dlogy.evalf(t))
        same = du * float(eps[0]) + dv * float(eps[1]) > 0
        out.append((t, 1 if wv > 0 else -1, same))
    return out


def rot_log(curve: RealRationalCurve, seed: int = 0, method: str = "count") -> int:
    """Rotation number of the logarithmic Gauss map along the oriented real locus."""
    if method == "turning":
        return _rot_turning(curve)
    d1, d2 = _gauss_polys(curve)
    for eps in _take(_eps_stream(seed), 32):
        ps = _passages(curve, eps, d1, d2)
        if ps is not None:
            return curve.orientation * sum(s for _, s, _ in ps)
    raise DegenerateGauss("no generic direction found")


def _take(gen, n):
    for _ in range(n):
        yield next(gen)


def _rot_turning(curve: RealRationalCurve, max_nodes: int = 200000) -> int:
    """Independent check: accumulate the projective angle over θ ∈ (−π, π]."""
    chart = LogChart(curve)

    def angle(th):
        _, du, _, dv = chart.terms(th)
        nrm = np.hypot(du, dv)
        if np.any(nrm < 1e-300):
            raise DegenerateGauss("direction vanishes")
        return np.arctan2(dv, du)

    def wrap(d):
        return (d + math.pi / 2) % math.pi - math.pi / 2

    nodes = np.linspace(-math.pi, math.pi, 4097)
    # keep samples off the singular angles
    nodes = nodes + 1e-7
    ang = angle(nodes)
    while True:
        d = wrap(np.diff(ang))
        bad = np.abs(d) > math.pi / 8
        if not bad.any():
            break
        if nodes.size > max_nodes:
            raise SnapFailure("turning computation did not resolve")
        mids = 0.5 * (nodes[:-1][bad] + nodes[1:][bad])
        nodes = np.sort(np.concatenate([nodes, mids]))
        ang = angle(nodes)
    total = float(np.sum(wrap(np.diff(ang))))
    rot = total / math.pi
    snapped = round(rot)
    if abs(rot - snapped) > 0.01:
        raise SnapFailure(f"rotation {rot:.4f} is not an integer")
    return curve.orientation * snapped


def gauss_local_degrees(curve: RealRationalCurve, eps, diag=None) -> dict:
    """Signed passages of the oriented Gauss map through ``eps``, per diagram vertex."""
    diag = diag or index_diagram(curve)
    ps = _passages(curve, eps)
    if ps is None:
        return None
    from .rational_curves import _which_arc
    out: dict = {}
    o = curve.orientation
    for t, sgn, same in ps:
        if same != (o == 1):
            continue  # oriented direction is -eps here
        v = diag.vertices[_which_arc(t, diag)]
        out[v] = out.get(v, 0) + o * sgn
    return out


# ---------------------------------------------------------------- bivariate solver

def _z_powers(coeffs_asc, conj: bool) -> np.ndarray:
    """Coefficient array C[i, j] of X^i Y^j in p(X ± iY)."""
    n = len(coeffs_asc)
    out = np.zeros((n, n), dtype=complex)
    unit = -1j if conj else 1j
    for k, c in enumerate(coeffs_asc):
        for j in range(k + 1):
            out[k - j, j] += c * comb(k, j) * unit ** j
    return out


def _conv2(a, b):
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j] != 0:
                out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
    return out


def _asc(poly: sp.Poly):
    return [float(to_fraction(c)) for c in reversed(poly.all_coeffs())]


def im_product(num: sp.Poly, den: sp.Poly, phase: complex = 1.0) -> np.ndarray:
    """Real coefficient array of Im(phase · num(z) · conj(den(z)))."""
    arr = _conv2(_z_powers(_asc(num), False), _z_powers(_asc(den), True)) * phase
    return arr.imag.copy()


def _shift_matrix(n: int, c: float) -> np.ndarray:
    m = np.zeros((n, n))
    for i in range(n):
        for k in range(i + 1):
            m[k, i] = comb(i, k) * c ** (i - k)
    return m


def _taylor(C, cx, cy):
    return _shift_matrix(C.shape[0], cx) @ C @ _shift_matrix(C.shape[1], cy).T


def _deviation_bound(C, cx, cy, rx, ry) -> float:
    S = np.abs(_taylor(C, cx, cy))
    S[0, 0] = 0.0
    px = rx ** np.arange(C.shape[0])
    py = ry ** np.arange(C.shape[1])
    return float(px @ S @ py)


@dataclass
class PlaneRoot:
    z: complex
    jac_sign: int
    jac_det: float


class PolySystem:
    """Two real bivariate polynomials given by coefficient arrays."""

    def __init__(self, c1: np.ndarray, c2: np.ndarray):
        self.c = (c1, c2)
        self.d = [(P2.polyder(c, axis=0), P2.polyder(c, axis=1)) for c in self.c]

    def value(self, x, y):
        return np.array([P2.polyval2d(x, y, c) for c in self.c])

    def jac(self, x, y):
        return np.array([[P2.polyval2d(x, y, dx), P2.polyval2d(x, y, dy)] for dx, dy in self.d])

    def excluded(self, cx, cy, rx, ry) -> bool:
        val = self.value(cx, cy)
        for k in range(2):
            if abs(val[k]) > _deviation_bound(self.c[k], cx, cy, rx, ry) * (1 + 1e-9) + 1e-300:
                return True
        return False

    def contraction(self, cx, cy, rx, ry):
        """J(c)^-1 when simplified Newton is a 1/2-contraction on the box, else None."""
        J = self.jac(cx, cy)
        if abs(np.linalg.det(J)) < 1e-300:
            return None
        Ji = np.linalg.inv(J)
        E = np.array([[_deviation_bound(d, cx, cy, rx, ry) for d in pair] for pair in self.d])
        if np.max(np.sum(np.abs(Ji) @ E, axis=1)) < 0.5:
            return Ji
        return None

    def winding(self, x0, x1, y0, y1, max_nodes: int = 100000) -> int:
        """Winding number of the field along the rectangle boundary (counterclockwise)."""
        corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)]
        total = 0.0
        for (ax, ay), (bx, by) in zip(corners, corners[1:]):
            s = np.linspace(0.0, 1.0, 257)
            while True:
                vx = ax + s * (bx - ax)
                vy = ay + s * (by - ay)
                f = self.value(vx, vy)
                ang = np.arctan2(f[1], f[0])
                d = (np.diff(ang) + math.pi) % (2 * math.pi) - math.pi
                bad = np.abs(d) > math.pi / 6
                if not bad.any():
                    break
                if s.size > max_nodes:
                    raise ClusterUnresolved("field vanishes near the search boundary")
                s = np.sort(np.concatenate([s, 0.5 * (s[:-1][bad] + s[1:][bad])]))
            total += float(np.sum(d))
        return round(total / (2 * math.pi))

    def solve(self, x0, x1, y0, y1, max_boxes: int = 400000) -> list[PlaneRoot]:
        scale = max(x1 - x0, y1 - y0)
        stack = [(x0, x1, y0, y1, 0)]
        found: list[PlaneRoot] = []
        boxes = 0
        while stack:
            a0, a1, b0, b1, depth = stack.pop()
            boxes += 1
            if boxes > max_boxes:
                raise ClusterUnresolved("subdivision budget exhausted")
            cx, cy = 0.5 * (a0 + a1), 0.5 * (b0 + b1)
            rx, ry = 0.5 * (a1 - a0), 0.5 * (b1 - b0)
            if self.excluded(cx, cy, rx, ry):
                continue
            Ji = self.contraction(cx, cy, 3 * rx, 3 * ry)
            if Ji is not None:
                z = self._newton(cx, cy, Ji)
                if z is not None and a0 - 1e-12 * scale <= z[0] <= a1 + 1e-12 * scale \
                        and b0 - 1e-12 * scale <= z[1] <= b1 + 1e-12 * scale:
                    zc = complex(*z)
                    if all(abs(zc - r.z) > 1e-9 * scale for r in found):
                        det = float(np.linalg.det(self.jac(*z)))
                        found.append(PlaneRoot(zc, 1 if det > 0 else -1, det))
                continue
            if depth > 60:
                raise ClusterUnresolved(f"cannot isolate a solution near {cx:.6g}+{cy:.6g}i")
            if rx >= ry:
                stack += [(a0, cx, b0, b1, depth + 1), (cx, a1, b0, b1, depth + 1)]
            else:
                stack += [(a0, a1, b0, cy, depth + 1), (a0, a1, cy, b1, depth + 1)]
        found.sort(key=lambda r: (r.z.real, r.z.imag))
        return found

    def _newton(self, cx, cy, Ji):
        z = np.array([cx, cy])
        with np.errstate(over="ignore", invalid="ignore"):
            for _ in range(200):
                step = Ji @ self.value(*z)
                z = z - step
                if not np.all(np.isfinite(z)):
                    return None
                if np.max(np.abs(step)) <= 1e-15 * max(1.0, np.max(np.abs(z))):
                    break
            else:
                return None
        for _ in range(3):
            J = self.jac(*z)
            try:
                z = z - np.linalg.solve(J, self.value(*z))
            except np.linalg.LinAlgError:
                break
        return z


UPPER_GAP = 1e-7


def _search_radius(curve: RealRationalCurve) -> float:
    roots = []
    for p in (curve.x.num, curve.x.den, curve.y.num, curve.y.den):
        if p.degree() > 0:
            roots += [abs(complex(r)) for r in np.roots([float(to_fraction(c)) for c in p.all_coeffs()])]
    return 1.0 + 2.0 * max(roots, default=1.0)


def _inverted(curve: RealRationalCurve) -> RealRationalCurve:
    """The same curve in the parameter w = −1/t (keeps each half-plane)."""
    from .ratfunc import RationalFunction

    def inv(f):
        e = sp.cancel(sp.together((f.num.as_expr() / f.den.as_expr()).subs(T, -1 / T)))
        n, d = sp.fraction(e)
        return RationalFunction(sp.Poly(n, T, domain="QQ"), sp.Poly(d, T, domain="QQ"))

    return RealRationalCurve(inv(curve.x), inv(curve.y), curve.orientation)


def _all_roots(curve: RealRationalCurve, make_system, upper_only: bool) -> list[complex]:
    """Solutions over the upper half-plane (or all of C \\ R) in two charts.

    The chart t covers |t| < R and the chart w = −1/t covers |t| ≥ R; the
    boundary winding of each search box must match its certified roots.
    """
    R = _search_radius(curve)
    out = []
    for chart, rad, to_t, keep in (
            (curve, R, lambda z: z, lambda z: abs(z) < R),
            (_inverted(curve), 1.0 / R, lambda w: -1.0 / w, lambda w: abs(w) <= 1.0 / R)):
        system = make_system(chart)
        # the real axis is kept off the box: real boundary parameters shared
        # by both coordinates are degenerate common zeros there
        box = (-rad, rad, UPPER_GAP * rad if upper_only else -rad, rad)
        roots = system.solve(*box)
        w = system.winding(*box)
        if w != sum(r.jac_sign for r in roots):
            raise ClusterUnresolved(f"boundary winding {w} disagrees with {len(roots)} certified roots")
        for r in roots:
            if keep(r.z) and r.z != 0:
                out.append(to_t(r.z))
    return out


def _bad_params(curve: RealRationalCurve) -> list[complex]:
    return [b.param for b in boundary_divisor(curve) if not b.is_real]


# ---------------------------------------------------------------- solitary points

@dataclass
class SolitaryPoint:
    param: complex
    sign: int
    real_index: LatticePoint | None
    point: tuple[float, float]

    def to_json(self) -> dict:
        return {"param": [self.param.real, self.param.imag], "lambda": self.sign,
                "real_index": None if self.real_index is None else list(self.real_index),
                "point": list(self.point)}


def _divide_by_y(c: np.ndarray) -> np.ndarray:
    assert np.allclose(c[:, 0], 0.0, atol=1e-9 * max(1.0, np.abs(c).max()))
    return c[:, 1:].copy()


def _ev(poly_f, z):
    return np.polyval(poly_f, z)


def solitary_points(curve: RealRationalCurve) -> list[SolitaryPoint]:
    """Isolated real points of the curve in the torus, with signs and real indices."""
    def make(c):
        return PolySystem(_divide_by_y(im_product(c.x.num, c.x.den)),
                          _divide_by_y(im_product(c.y.num, c.y.den)))

    roots = _all_roots(curve, make, upper_only=True)
    bad = _bad_params(curve)
    o = curve.orientation
    try:
        diag = index_diagram(curve)
    except NotToricTypeI:
        diag = None
    out = []
    for z in roots:
        if z.imag <= 1e-9 or any(abs(z - b) < 1e-7 * max(1.0, abs(b)) for b in bad):
            continue
        xv = complex(curve.x.evalf(z))
        yv = complex(curve.y.evalf(z))
        if not (np.isfinite(xv) and np.isfinite(yv)) or xv == 0 or yv == 0:
            continue
        w = z if o == 1 else z.conjugate()
        lam = _intersection_sign(curve, w, xv.real, yv.real)
        idx = _track_real_index(curve, diag, w) if diag is not None else None
        out.append(SolitaryPoint(w, lam, idx, (xv.real, yv.real)))
    return out


def _intersection_sign(curve: RealRationalCurve, z: complex, xr: float, yr: float) -> int:
    """Local intersection of the branch at ``z`` (complex orientation) with the real plane."""
    dx = complex(curve.x.derivative().evalf(z))
    dy = complex(curve.y.derivative().evalf(z))
    s1 = [dx.real, dx.imag, dy.real, dy.imag]
    iv1, iv2 = 1j * dx, 1j * dy
    s2 = [iv1.real, iv1.imag, iv2.real, iv2.imag]
    m = np.array([s1, s2, [1.0, 0, 0, 0], [0, 0, 1.0, 0]]).T
    det = float(np.linalg.det(m))
    quad = 1 if (xr > 0) == (yr > 0) else -1
    if det == 0:
        raise ClusterUnresolved("tangential solitary point")
    # sign fixed so that k = -Rot/2 + E holds on nodal cubics
    return -quad * (1 if det > 0 else -1)


def _track_real_index(curve: RealRationalCurve, diag, z: complex) -> LatticePoint:
    """Continue (arg x, arg y)/π from the base arc midpoint to ``z``."""
    arc = diag.arcs[0]
    t0 = float(arc.sample)
    start = complex(t0, 0.0)
    ax = math.pi * diag.vertices[0].a
    ay = math.pi * diag.vertices[0].b
    xprev = complex(curve.x.evalf(start))
    yprev = complex(curve.y.evalf(start))
    s, h = 0.0, 1.0 / 64
    while s < 1.0:
        h = min(h, 1.0 - s)
        w = start + (s + h) * (z - start)
        xn = complex(curve.x.evalf(w))
        yn = complex(curve.y.evalf(w))
        dxa = np.angle(xn / xprev)
        dya = np.angle(yn / yprev)
        if max(abs(dxa), abs(dya)) > math.pi / 8 and h > 1e-12:
            h /= 2
            continue
        ax += dxa
        ay += dya
        xprev, yprev = xn, yn
        s += h
        h *= 1.5
    a, b = ax / math.pi, ay / math.pi
    ra, rb = round(a), round(b)
    if max(abs(a - ra), abs(b - rb)) > 1e-6:
        raise SnapFailure(f"argument lift ({a:.4f}, {b:.4f}) is not integral")
    return LatticePoint(int(ra), int(rb))


# ---------------------------------------------------------------- 2 arg degree

def two_arg_degree(curve: RealRationalCurve, target=None, seed: int = 0, budget: int = 8) -> int:
    """Degree of z ↦ (2 arg x, 2 arg y) from the oriented half S onto the pillowcase.

    The pillowcase identifies a target with its negative, and solutions for
    the negated target on S are the conjugates of solutions in the other
    half-plane, which carry the opposite orientation.  So the degree is
    ``o·(N_upper − N_lower)`` with signed counts N for the given target.
    """
    rng = np.random.default_rng(seed)
    bad = _bad_params(curve) + [b.approx for b in boundary_divisor(curve) if b.kind == "real"]
    for attempt in range(budget):
        if target is None or attempt > 0:
            al, be = rng.uniform(0.1, 2 * math.pi - 0.1, size=2)
        else:
            al, be = float(target[0]), float(target[1])

        def make(c, al=al, be=be):
            return PolySystem(im_product(c.x.num, c.x.den, np.exp(-0.5j * al)),
                              im_product(c.y.num, c.y.den, np.exp(-0.5j * be)))

        try:
            roots = _all_roots(curve, make, upper_only=False)
        except ClusterUnresolved as exc:
            log.info("resampling target: %s", exc)
            continue
        total = 0
        ok = True
        for z in roots:
            if any(abs(z - b) < 1e-7 * max(1.0, abs(b)) for b in bad):
                continue
            if abs(z.imag) < 1e-9:
                ok = False
                break
            w1 = complex(curve.dlogx.evalf(z))
            w2 = complex(curve.dlogy.evalf(z))
            j = (w1 * w2.conjugate()).imag
            if abs(j) < 1e-10 * abs(w1) * abs(w2):
                ok = False
                break
            total += (1 if j > 0 else -1) * (1 if z.imag > 0 else -1)
        if ok:
            return curve.orientation * total
    raise TargetDegenerate("no generic target found within the resample budget")


# ---------------------------------------------------------------- reports

@dataclass
class NumericReport:
    area_log: float
    area_error: float
    k_numeric: Fraction
    k_residual: float
    rot_log: int
    solitary: list = field(default_factory=list)
    E: int = 0
    k_diagram: Fraction | None = None
    two_arg: int | None = None
    tol: float = 1e-6
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "area_log": self.area_log, "area_error": self.area_error,
            "k_numeric": str(self.k_numeric), "k_residual": self.k_residual,
            "rot_log": self.rot_log, "E": self.E,
            "solitary": [s.to_json() for s in self.solitary],
            "k_diagram": None if self.k_diagram is None else str(self.k_diagram),
            "two_arg_degree": self.two_arg, "tol": self.tol,
            "ok": self.ok, "failures": list(self.failures),
        }


def verify_quantization(curve: RealRationalCurve, tol: float = 1e-6, two_arg: bool = False) -> NumericReport:
    """Run the numeric oracles on one curve and compare them with each other."""
    area = area_log(curve, tol=min(tol, 1e-8))
    k = snap_half(area.k)
    resid = abs(area.k - float(k))
    rot = rot_log(curve)
    sol = solitary_points(curve)
    E = sum(s.sign for s in sol)
    rep = NumericReport(area.value, area.error, k, resid, rot, sol, E, tol=tol)
    poly = curve_polygon(curve)
    half_area = Fraction(double_area(poly), 2)
    if resid > tol:
        rep.failures.append(f"area/pi^2 is {resid:.3g} away from a half-integer")
    if abs(k) > half_area:
        rep.failures.append("|k| exceeds Area(Delta)")
    if (k - half_area).denominator != 1:
        rep.failures.append("k and Area(Delta) differ by a non-integer")
    if is_transversal(curve) and Fraction(-rot, 2) + E != k:
        rep.failures.append(f"-Rot/2 + E = {Fraction(-rot, 2) + E} but k = {k}")
    try:
        kd = diagram_area(index_diagram(curve))
        rep.k_diagram = kd
        if kd != k:
            rep.failures.append(f"diagram area {kd} differs from numeric k {k}")
    except NotToricTypeI:
        pass
    if two_arg:
        rep.two_arg = two_arg_degree(curve)
        if rep.two_arg != 2 * k:
            rep.failures.append(f"two-argument degree {rep.two_arg} != 2k")
    return rep


def co_ab_check(curve: RealRationalCurve, eps=None, seed: int = 0):
    """Compare, at every lattice point, Gauss passages plus solitary signs with linking.

    Returns ``(eps, mismatches)`` where mismatches maps lattice points to
    (lhs, rhs) pairs that differ.
    """
    if not is_transversal(curve):
        raise InputError("the linking identity needs simple boundary intersections")
    diag = index_diagram(curve)
    sols = solitary_points(curve)
    stream = _eps_stream(seed + 7919)
    candidates = [eps] if eps is not None else []
    for e in candidates + list(_take(stream, 32)):
        if e is None:
            continue
        e = (Fraction(e[0]), Fraction(e[1]))
        g = gauss_local_degrees(curve, e, diag)
        if g is None:
            continue
        xs = [v.a for v in diag.vertices] + [s.real_index.a for s in sols]
        ys = [v.b for v in diag.vertices] + [s.real_index.b for s in sols]
        bad = {}
        try:
            for a in range(min(xs) - 1, max(xs) + 2):
                for b in range(min(ys) - 1, max(ys) + 2):
                    p = LatticePoint(a, b)
                    lhs = -g.get(p, 0) + sum(s.sign for s in sols if s.real_index == p)
                    rhs = linking(p, diag, e, strict=True)
                    if lhs != rhs:
                        bad[p] = (lhs, rhs)
        except ValueError:
            continue
        return e, bad
    raise DegenerateGauss("no admissible direction")
