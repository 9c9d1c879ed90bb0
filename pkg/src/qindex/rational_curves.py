"""Real rational curves t -> (x(t), y(t)) in the torus and their index diagrams.

The boundary divisor collects the zeros and poles of ``x`` and ``y``
(including ``t = ∞``).  At a boundary parameter with orders
``o = (ord x, ord y)`` the curve runs into the toric boundary divisor whose
outward normal ``n`` satisfies ``m_e·n = -o``.

The index diagram assigns a lattice point to every real arc between
consecutive real boundary parameters.  Crossing a boundary point moves the
vertex by ``m_e·n``; the parity of each vertex records the quadrant of its
arc (odd first coordinate means ``x < 0``).
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import mpmath
import numpy as np
import sympy as sp

from .errors import (EndpointOnCurve, NonRealBoundary, NotToricTypeI, ParityViolation, ParseError,
                     PolygonMismatch)
from .lattice import LatticePoint, LatticePolygon, cross, implied_polygon, primitive
from .ratfunc import (T, RationalFunction, RealRoot, complex_roots_of, irreducible_factors,
                      real_roots_of, to_fraction)

INF = math.inf


@dataclass(frozen=True)
class RealRationalCurve:
    x: RationalFunction
    y: RationalFunction
    orientation: int = 1
    declared_polygon: LatticePolygon | None = None

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ParseError("orientation must be +1 or -1")
        if self.x.num.degree() <= 0 and self.x.den.degree() <= 0 and \
                self.y.num.degree() <= 0 and self.y.den.degree() <= 0:
            raise ParseError("constant map")

    @classmethod
    def from_coeffs(cls, xnum, xden, ynum, yden, orientation=1, polygon=None):
        return cls(RationalFunction.from_coeffs(xnum, xden), RationalFunction.from_coeffs(ynum, yden),
                   orientation, polygon)

    def reversed(self) -> "RealRationalCurve":
        return RealRationalCurve(self.x, self.y, -self.orientation, self.declared_polygon)

    def to_json(self) -> dict:
        out = {"x": self.x.to_json(), "y": self.y.to_json(), "orientation": self.orientation}
        if self.declared_polygon is not None:
            out["polygon"] = self.declared_polygon.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RealRationalCurve":
        try:
            poly = data.get("polygon")
            return cls(RationalFunction.from_json(data["x"]), RationalFunction.from_json(data["y"]),
                       int(data.get("orientation", 1)),
                       LatticePolygon.from_json(poly) if poly else None)
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"bad curve file: {exc}") from exc

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()[:16]

    @cached_property
    def dlogx(self) -> RationalFunction:
        return self.x.derivative() * self.x.inverse()

    @cached_property
    def dlogy(self) -> RationalFunction:
        return self.y.derivative() * self.y.inverse()

    def log_point(self, t):
        """(log|x|, log|y|) at real parameters ``t`` (vectorized)."""
        return np.log(np.abs(self.x.evalf(t))), np.log(np.abs(self.y.evalf(t)))


def fr2(curve: RealRationalCurve) -> RealRationalCurve:
    """Coordinate squaring (x, y) -> (x², y²)."""
    poly = curve.declared_polygon.scaled(2) if curve.declared_polygon is not None else None
    return RealRationalCurve(curve.x ** 2, curve.y ** 2, curve.orientation, poly)


# ---------------------------------------------------------------- boundary

@dataclass(frozen=True)
class BoundaryPoint:
    """A zero or pole of ``x`` or ``y``.

    ``kind`` is ``"real"``, ``"infinity"`` or ``"complex"``.  ``toric_value``
    is the value of the monomial ``x^w1 y^w2``, ``w = (-n2, n1)``, which is
    the coordinate of the point on its boundary divisor.
    """

    kind: str
    param: object  # RealRoot, math.inf or complex
    order_vec: LatticePoint
    normal: LatticePoint
    mult: int
    toric_value: complex

    @property
    def is_real(self) -> bool:
        return self.kind != "complex"

    @property
    def sort_key(self) -> float:
        if self.kind == "infinity":
            return INF
        return self.param.value if self.kind == "real" else self.param.real

    @property
    def approx(self):
        if self.kind == "real":
            return self.param.value
        return self.param

    @property
    def positive(self) -> bool:
        return self.is_real and self.toric_value.real > 0

    @property
    def purely_imaginary(self) -> bool:
        v = self.toric_value
        return abs(v.real) <= 1e-9 * abs(v)

    def to_json(self) -> dict:
        if self.kind == "real":
            p = str(self.param.exact) if self.param.exact is not None else repr(self.param.value)
        elif self.kind == "infinity":
            p = "inf"
        else:
            p = [self.param.real, self.param.imag]
        return {"kind": self.kind, "param": p, "order_vec": list(self.order_vec),
                "normal": list(self.normal), "mult": self.mult}


def _monomial_value_at(curve: RealRationalCurve, factor, mults, t0, w) -> complex:
    """Finite limit of x^w1 y^w2 at a root ``t0`` of the irreducible ``factor``."""
    def stripped(p: sp.Poly, e: int):
        return sp.Poly(sp.quo(p, factor ** e), T, domain="QQ") if e else p

    eP, eQ, eR, eS = mults
    parts = [stripped(curve.x.num, eP), stripped(curve.x.den, eQ),
             stripped(curve.y.num, eR), stripped(curve.y.den, eS)]
    dfac = factor.diff(T)
    if isinstance(t0, Fraction):
        def ev(p):
            return sp.Rational(t0.numerator, t0.denominator) if p is None else p.eval(
                sp.Rational(t0.numerator, t0.denominator))
        vals = [ev(p) for p in parts]
        fd = dfac.eval(sp.Rational(t0.numerator, t0.denominator))
        xv = vals[0] / vals[1] * fd ** (eP - eQ)
        yv = vals[2] / vals[3] * fd ** (eR - eS)
        return complex(sp.Rational(xv) ** w[0] * sp.Rational(yv) ** w[1])
    with mpmath.workdps(40):
        def ev(p):
            return mpmath.polyval([mpmath.mpf(to_fraction(c).numerator) / to_fraction(c).denominator
                                   for c in p.all_coeffs()], t0)
        fd = ev(dfac)
        xv = ev(parts[0]) / ev(parts[1]) * fd ** (eP - eQ)
        yv = ev(parts[2]) / ev(parts[3]) * fd ** (eR - eS)
        return complex(xv ** w[0] * yv ** w[1])


def boundary_divisor(curve: RealRationalCurve) -> list[BoundaryPoint]:
    """All zeros and poles of x and y, real ones sorted, ∞ last, then complex."""
    facs: dict = {}
    for slot, p in enumerate((curve.x.num, curve.x.den, curve.y.num, curve.y.den)):
        for f, e in irreducible_factors(p):
            key = tuple(f.all_coeffs())
            entry = facs.setdefault(key, [f, [0, 0, 0, 0]])
            entry[1][slot] += e
    real, cx = [], []
    for f, mults in facs.values():
        eP, eQ, eR, eS = mults
        order = LatticePoint(eP - eQ, eR - eS)
        normal, m = primitive(-order)
        w = (-normal.b, normal.a)
        for r in real_roots_of(f):
            t0 = r.exact if r.exact is not None else r.mp_value()
            val = _monomial_value_at(curve, f, mults, t0, w)
            real.append(BoundaryPoint("real", r, order, normal, m, val))
        for z in complex_roots_of(f):
            with mpmath.workdps(40):
                zz = mpmath.polyroots([mpmath.mpf(to_fraction(c).numerator) / to_fraction(c).denominator
                                       for c in f.all_coeffs()], maxsteps=200, extraprec=200)
                z0 = min(zz, key=lambda u: abs(complex(u) - z))
            val = _monomial_value_at(curve, f, mults, mpmath.mpc(z0), w)
            cx.append(BoundaryPoint("complex", complex(z0), order, normal, m, val))
    real.sort(key=lambda b: b.param.lo)
    for a, b in zip(real, real[1:]):
        if a.param.hi >= b.param.lo:
            raise AssertionError("overlapping root brackets")
    ox = curve.x.degree_at_infinity
    oy = curve.y.degree_at_infinity
    if (ox, oy) != (0, 0):
        order = LatticePoint(ox, oy)
        normal, m = primitive(-order)
        w = (-normal.b, normal.a)
        lx = to_fraction(curve.x.num.LC()) / to_fraction(curve.x.den.LC())
        ly = to_fraction(curve.y.num.LC()) / to_fraction(curve.y.den.LC())
        val = complex(Fraction(lx) ** w[0] * Fraction(ly) ** w[1])
        real.append(BoundaryPoint("infinity", INF, order, normal, m, val))
    pts = real + cx
    total = (sum(b.order_vec.a for b in pts), sum(b.order_vec.b for b in pts))
    assert total == (0, 0), "divisor of a rational function has degree zero"
    return pts


def curve_polygon(curve: RealRationalCurve, points=None) -> LatticePolygon:
    """Newton polygon implied by the boundary divisor, checked against the declared one."""
    pts = boundary_divisor(curve) if points is None else points
    poly = implied_polygon([b.normal.scale(b.mult) for b in pts])
    if curve.declared_polygon is not None and not curve.declared_polygon.same_shape(poly):
        raise PolygonMismatch(f"declared polygon {curve.declared_polygon} but orders give {poly}")
    return poly


def is_transversal(curve: RealRationalCurve) -> bool:
    """Every boundary point is a simple intersection with its divisor."""
    return all(b.mult == 1 for b in boundary_divisor(curve))


def negative_counts(curve: RealRationalCurve, poly: LatticePolygon | None = None) -> list[int]:
    """Number of negative real boundary points on each side of the polygon."""
    from .lattice import sides
    pts = boundary_divisor(curve)
    poly = poly or curve_polygon(curve, pts)
    out = []
    for s in sides(poly):
        out.append(sum(b.mult for b in pts if b.normal == s.normal and b.is_real and not b.positive))
    return out


# ---------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class Arc:
    start: object  # boundary point bracket or None for a closed circle
    end: object
    sample: Fraction  # exact interior parameter (a huge value stands in for ∞)
    quadrant: tuple[int, int]  # signs of (x, y)


@dataclass(frozen=True)
class IndexDiagram:
    vertices: tuple[LatticePoint, ...]
    edges: tuple[LatticePoint, ...]
    arcs: tuple[Arc, ...] = field(default=(), compare=False)
    translate: LatticePoint = field(default=LatticePoint(0, 0), compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        for i, e in enumerate(self.edges):
            if self.vertices[i] + e != self.vertices[(i + 1) % n]:
                raise ValueError("edges do not match vertices")

    def digest(self) -> str:
        return hashlib.sha256(repr((self.vertices, self.edges)).encode()).hexdigest()

    def translated(self, v) -> "IndexDiagram":
        return IndexDiagram(tuple(p + v for p in self.vertices), self.edges, self.arcs,
                            self.translate + v)

    def scaled(self, k: int) -> "IndexDiagram":
        return IndexDiagram(tuple(p.scale(k) for p in self.vertices),
                            tuple(e.scale(k) for e in self.edges), self.arcs)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "edges": [list(e) for e in self.edges],
                "area": _half_str(diagram_area(self)), "normalization_translate": list(self.translate)}


def _half_str(x: Fraction) -> str:
    return f"{int(x * 2)}/2"


def _parity(q) -> LatticePoint:
    return LatticePoint(0 if q[0] > 0 else 1, 0 if q[1] > 0 else 1)


def _sign(v) -> int:
    return 1 if v > 0 else -1


def real_arcs(curve: RealRationalCurve, points=None) -> list[Arc]:
    """Arcs of the real parameter circle in increasing-t order, ∞ last.

    Orientation is not applied here.
    """
    pts = boundary_divisor(curve) if points is None else points
    reals = [b for b in pts if b.is_real]
    finite = [b for b in reals if b.kind == "real"]
    has_inf = any(b.kind == "infinity" for b in reals)
    if not finite:
        lo, hi = Fraction(-1), Fraction(1)
    else:
        lo, hi = finite[0].param.lo, finite[-1].param.hi
    far_right = max(abs(hi), abs(lo)) * 4 + 1
    far_left = -far_right
    samples = []
    for a, b in zip(finite, finite[1:]):
        samples.append(((a, b), (a.param.hi + b.param.lo) / 2))
    if has_inf:
        inf = next(b for b in reals if b.kind == "infinity")
        if finite:
            samples.append(((finite[-1], inf), far_right))
            samples.insert(0, ((inf, finite[0]), far_left))
        else:
            samples.append(((inf, inf), Fraction(0)))
    elif finite:
        samples.append(((finite[-1], finite[0]), far_right))
    else:
        samples.append(((None, None), Fraction(0)))
    if has_inf and finite:
        # keep the "∞ last" convention: the arc leaving ∞ goes to the end
        samples = samples[1:] + samples[:1]
    out = []
    for (a, b), s in samples:
        q = (_sign(curve.x(s)), _sign(curve.y(s)))
        out.append(Arc(a, b, s, q))
    return out


def index_diagram(curve: RealRationalCurve, base_arc: int = 0) -> IndexDiagram:
    """Index diagram of a curve whose boundary points are all real."""
    pts = boundary_divisor(curve)
    if any(not b.is_real for b in pts):
        raise NonRealBoundary("curve has non-real coordinate intersections", step=None)
    curve_polygon(curve, pts)
    arcs = real_arcs(curve, pts)
    n = len(arcs)
    # arc i runs from boundary point arcs[i].start to arcs[i].end
    if curve.orientation == 1:
        order = list(range(n))
        crossing = [arcs[i].end for i in order]
    else:
        order = [0] + list(range(n - 1, 0, -1))
        crossing = [arcs[i].start for i in order]
    if n == 1 and arcs[0].start is None:
        return IndexDiagram((_parity(arcs[0].quadrant),), (), tuple(arcs))
    edges = []
    for b in crossing:
        edges.append(b.normal.scale(b.mult))
    quads = [arcs[i].quadrant for i in order]
    return diagram_from_boundary_sequence(quads, edges, base_arc=base_arc,
                                          arcs=tuple(arcs[i] for i in order))


def diagram_from_boundary_sequence(quadrants: Sequence, edges: Sequence, base_arc: int = 0,
                                   arcs=()) -> IndexDiagram:
    """Build Σ from arc quadrant signs and the edge vectors between arcs.

    ``edges[i]`` is the jump from arc ``i`` to arc ``i+1``.  Parity is
    checked at every step; failure raises NotToricTypeI with the step.
    """
    n = len(quadrants)
    if len(edges) != n:
        raise ParseError("need one edge vector per arc")
    edges = [LatticePoint(*e) for e in edges]
    verts: list = [None] * n
    verts[base_arc] = _parity(quadrants[base_arc])
    for step in range(1, n + 1):
        i = (base_arc + step - 1) % n
        j = (base_arc + step) % n
        v = verts[i] + edges[i]
        if step == n:
            if v != verts[base_arc]:
                raise NotToricTypeI(f"diagram does not close (off by {tuple(v - verts[base_arc])})",
                                    step=step)
            break
        if LatticePoint(v.a % 2, v.b % 2) != _parity(quadrants[j]):
            raise NotToricTypeI(
                f"parity fails at step {step}: vertex {tuple(v)} for arc in quadrant {tuple(quadrants[j])}",
                step=step)
        verts[j] = v
    shift = _parity(quadrants[0]) - verts[0]
    diag = IndexDiagram(tuple(verts), tuple(edges), tuple(arcs))
    return diag.translated(shift) if shift != (0, 0) else diag


def diagram_area(diag: IndexDiagram) -> Fraction:
    vs = diag.vertices
    n = len(vs)
    return Fraction(sum(cross(vs[i], vs[(i + 1) % n]) for i in range(n)), 2)


def quantum_index_combinatorial(curve: RealRationalCurve) -> Fraction:
    k = diagram_area(index_diagram(curve))
    area2 = _double_area_of(curve_polygon(curve))
    assert (k - Fraction(area2, 2)).denominator == 1, "quantization congruence violated"
    return k


def _double_area_of(poly) -> int:
    from .lattice import double_area
    return double_area(poly)


# ---------------------------------------------------------------- linking

def _default_eps(diag: IndexDiagram, attempt: int) -> tuple[Fraction, Fraction]:
    seed = int(diag.digest()[:12], 16) + attempt
    rng = np.random.default_rng(seed)
    q = int(rng.integers(101, 997))
    p = int(rng.integers(-3 * q, 3 * q))
    return Fraction(1), Fraction(p, q)


def _ray_crossings(p, eps, diag: IndexDiagram):
    """Signed crossings, or None if the ray is not in general position."""
    vs = diag.vertices
    n = len(vs)
    total = 0
    for i in range(len(diag.edges)):
        u = vs[i]
        d = diag.edges[i]
        den = cross(eps, d)
        if den == 0:
            return None
        w = (u[0] - p[0], u[1] - p[1])
        s = Fraction(cross(w, d)) / den
        r = Fraction(cross(w, eps)) / den
        if s == 0:
            continue  # incidence at p itself is ignored
        if s < 0:
            continue
        if r == 0 or r == 1:
            return None
        if 0 < r < 1:
            total += 1 if den > 0 else -1
    return total


def linking(point, diag: IndexDiagram, eps=None, max_tries: int = 64, strict: bool = False) -> int:
    """Signed count of crossings of the ray ``point + s·eps`` with Σ.

    A non-generic ``eps`` is replaced by a pseudorandom one unless
    ``strict`` is set, in which case ValueError is raised.
    """
    p = (Fraction(point[0]), Fraction(point[1]))
    if eps is not None:
        e = (Fraction(eps[0]), Fraction(eps[1]))
        res = _ray_crossings(p, e, diag)
        if res is not None:
            return res
        if strict:
            raise ValueError("ray direction is not generic for this diagram")
    for attempt in range(max_tries):
        res = _ray_crossings(p, _default_eps(diag, attempt), diag)
        if res is not None:
            return res
    raise RuntimeError("no admissible ray direction found")


def lattice_box(diag: IndexDiagram):
    xs = [v.a for v in diag.vertices]
    ys = [v.b for v in diag.vertices]
    return min(xs), max(xs), min(ys), max(ys)


def quadrant_linking(signs, diag: IndexDiagram, eps=None) -> int:
    """Sum of linking numbers over the lattice points of one parity class.

    ``signs`` are the quadrant signs (±1, ±1); ``(+, +)`` is the class of
    even points.
    """
    par = _parity(signs)
    x0, x1, y0, y1 = lattice_box(diag)
    total = 0
    for a in range(x0, x1 + 1):
        if (a - par.a) % 2:
            continue
        for b in range(y0, y1 + 1):
            if (b - par.b) % 2:
                continue
            total += linking((a, b), diag, eps)
    return total


def nonzero_linking_points(diag: IndexDiagram, eps=None) -> list[tuple[LatticePoint, int]]:
    """Lattice points not on Σ with nonzero linking number."""
    x0, x1, y0, y1 = lattice_box(diag)
    out = []
    for a in range(x0, x1 + 1):
        for b in range(y0, y1 + 1):
            if on_diagram((a, b), diag):
                continue
            lk = linking((a, b), diag, eps)
            if lk:
                out.append((LatticePoint(a, b), lk))
    return out


def on_diagram(point, diag: IndexDiagram) -> bool:
    for u, d in zip(diag.vertices, diag.edges):
        w = (point[0] - u[0], point[1] - u[1])
        if cross(w, d) == 0:
            t = Fraction(w[0] * d[0] + w[1] * d[1], d[0] * d[0] + d[1] * d[1])
            if 0 <= t <= 1:
                return True
    return len(diag.edges) == 0 and tuple(point) == tuple(diag.vertices[0])


# ---------------------------------------------------------------- signs

def total_multiplicity(curve: RealRationalCurve) -> int:
    return sum(b.mult for b in boundary_divisor(curve))


def welschinger_sign(curve: RealRationalCurve, rot: int | None = None, k=None, E: int | None = None) -> int:
    """``(-1)^((m - Rot)/2)``.

    When k and E are given the sign is cross-checked against
    ``(-1)^(Area - k + E + m - g + 1)``, which is what ``Rot = 2(E - k)``
    and Pick's formula give.  The last three terms only depend on Δ and
    vanish mod 2 for the line, not for conics.
    """
    if rot is None:
        from .numerics import rot_log
        rot = rot_log(curve)
    m = total_multiplicity(curve)
    if (m - rot) % 2:
        raise ParityViolation(f"total multiplicity {m} and rotation number {rot} differ in parity")
    sigma = -1 if ((m - rot) // 2) % 2 else 1
    if k is not None and E is not None:
        poly = curve_polygon(curve)
        area2 = _double_area_of(poly)
        g = (area2 - m) // 2 + 1
        ex = Fraction(area2, 2) - Fraction(k) + E + m - g + 1
        if ex.denominator != 1:
            raise ParityViolation("Area - k is not an integer")
        other = -1 if int(ex) % 2 else 1
        if other != sigma:
            raise ParityViolation(f"sign {sigma} from rotation disagrees with {other} from k and E")
    return sigma


# ---------------------------------------------------------------- path counts

def arc_index_map(curve: RealRationalCurve):
    """Real index (diagram vertex) of each arc, keyed by the arc's sample parameter."""
    diag = index_diagram(curve)
    return diag, {a.sample: v for a, v in zip(diag.arcs, diag.vertices)}


def _which_arc(t: float, diag: IndexDiagram) -> int:
    for i, a in enumerate(diag.arcs):
        lo = -INF if a.start is None or a.start.kind == "infinity" else a.start.param.value
        hi = INF if a.end is None or a.end.kind == "infinity" else a.end.param.value
        if lo < hi:
            if lo < t < hi:
                return i
        elif t > lo or t < hi:
            return i
    raise ValueError(f"parameter {t} is not on any arc")


def _segment_roots(curve: RealRationalCurve, normal: LatticePoint, c: float) -> list[float]:
    """Real t with n1·log|x| + n2·log|y| = c, via an exact polynomial equation."""
    n1, n2 = normal
    num = sp.Poly(1, T, domain="QQ")
    den = sp.Poly(1, T, domain="QQ")
    for f, e in ((curve.x, n1), (curve.y, n2)):
        if e > 0:
            num, den = num * f.num ** e, den * f.den ** e
        elif e < 0:
            num, den = num * f.den ** -e, den * f.num ** -e
    g = sp.gcd(num, den)
    num, den = sp.quo(num, g), sp.quo(den, g)
    # |num/den| = e^c  <=>  num = ±r·den with r a 40-digit rational approximation of e^c
    r = Fraction(mpmath.nstr(mpmath.exp(mpmath.mpf(c)), 40, min_fixed=-1e9, max_fixed=1e9))
    r = sp.Rational(r.numerator, r.denominator)
    out = []
    for sign in (1, -1):
        poly = num - den * (sign * r)
        if poly.is_zero:
            raise EndpointOnCurve("segment lies along a tentacle")
        if poly.degree() <= 0:
            continue
        sq = poly.sqf_part()
        n_real = sq.count_roots()
        if n_real == 0:
            continue
        with mpmath.workdps(50):
            cs = [mpmath.mpf(to_fraction(k).numerator) / to_fraction(k).denominator
                  for k in sq.all_coeffs()]
            roots = mpmath.polyroots(cs, maxsteps=400, extraprec=200)
            real = sorted(float(mpmath.re(z)) for z in roots
                          if abs(mpmath.im(z)) <= mpmath.mpf(10) ** -30 * max(1, abs(z)))
        if len(real) != n_real:
            # fall back on exact isolation and refinement
            real = [float((to_fraction(lo) + to_fraction(hi)) / 2)
                    for (lo, hi), _ in sq.intervals(eps=sp.Rational(1, 10**12))]
        out += real
    return sorted(out)


def _polish(curve, normal, c, t):
    """Newton on the log equation; steps that do not reduce the residual are dropped."""
    def resid(s):
        with np.errstate(divide="ignore", invalid="ignore"):
            return normal[0] * math.log(abs(float(curve.x.evalf(s)))) + normal[1] * math.log(
                abs(float(curve.y.evalf(s)))) - c

    f = resid(t)
    for _ in range(6):
        df = normal[0] * float(curve.dlogx.evalf(t)) + normal[1] * float(curve.dlogy.evalf(t))
        if df == 0 or f == 0:
            break
        t1 = t - f / df
        try:
            f1 = resid(t1)
        except ValueError:
            break
        if not math.isfinite(f1) or abs(f1) >= abs(f):
            break
        t, f = t1, f1
    return t


def refined_path_count(curve: RealRationalCurve, start, steps) -> LatticePoint:
    """Σ over crossings of (local sign)·(real index of the crossed arc).

    The path starts at ``start`` and moves by ``length·d`` for each
    ``(d, length)`` in ``steps`` with ``d`` an integer vector.  Local sign is
    the sign of ``path' ∧ curve'`` with the curve in its orientation.
    """
    diag = index_diagram(curve)
    p = np.array([float(start[0]), float(start[1])])
    total = [0, 0]
    for d, length in steps:
        d = LatticePoint(int(d[0]), int(d[1]))
        normal = LatticePoint(-d.b, d.a)
        c = normal.a * p[0] + normal.b * p[1]
        end = p + float(length) * np.array(d, dtype=float)
        for t in _segment_roots(curve, normal, c):
            t = _polish(curve, normal, c, t)
            u, v = curve.log_point(t)
            s = ((u - p[0]) * d.a + (v - p[1]) * d.b) / (d.a ** 2 + d.b ** 2)
            if s < -1e-12 or s > float(length) + 1e-12:
                continue
            if min(abs(s), abs(s - float(length))) < 1e-9:
                raise EndpointOnCurve("path vertex lies on the real curve")
            tangent = (float(curve.dlogx.evalf(t)) * curve.orientation,
                       float(curve.dlogy.evalf(t)) * curve.orientation)
            w = d.a * tangent[1] - d.b * tangent[0]
            if abs(w) < 1e-12 * math.hypot(*tangent):
                raise EndpointOnCurve("path is tangent to the curve")
            sign = 1 if w > 0 else -1
            alpha = diag.vertices[_which_arc(t, diag)]
            total[0] += sign * alpha.a
            total[1] += sign * alpha.b
        p = end
    return LatticePoint(*total)


def path_to(start, end, directions) -> list:
    """Steps along integer ``directions`` then two closing steps reaching ``end``.

    The closing pair uses directions (1, 0) and (0, 1) or their negatives.
    """
    p = np.array(start, dtype=float)
    steps = []
    for d, length in directions:
        steps.append((d, length))
        p = p + length * np.array(d, dtype=float)
    rest = np.array(end, dtype=float) - p
    if rest[0]:
        steps.append(((1 if rest[0] > 0 else -1, 0), abs(rest[0])))
    if rest[1]:
        steps.append(((0, 1 if rest[1] > 0 else -1), abs(rest[1])))
    return steps
