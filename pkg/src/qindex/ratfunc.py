"""Exact univariate rational functions over Q with float/complex evaluation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import mpmath
import numpy as np
import sympy as sp

from .errors import ParseError, RootIsolationFailure

T = sp.Symbol("t")
ROOT_EPS = Fraction(1, 10**12)


def qq_poly(coeffs_ascending) -> sp.Poly:
    try:
        cs = [sp.Rational(str(Fraction(c))) for c in coeffs_ascending]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient list {coeffs_ascending!r}") from exc
    return sp.Poly(list(reversed(cs)) or [0], T, domain="QQ")


def to_fraction(r) -> Fraction:
    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))


@dataclass(frozen=True)
class RationalFunction:
    num: sp.Poly
    den: sp.Poly

    def __post_init__(self):
        if self.den.is_zero:
            raise ParseError("zero denominator")
        if self.num.is_zero:
            raise ParseError("coordinate function is identically zero")
        g = sp.gcd(self.num, self.den)
        num = sp.Poly(sp.quo(self.num, g), T, domain="QQ")
        den = sp.Poly(sp.quo(self.den, g), T, domain="QQ")
        lc = den.LC()
        object.__setattr__(self, "num", sp.Poly(num / lc, T, domain="QQ") if lc != 1 else num)
        object.__setattr__(self, "den", sp.Poly(den / lc, T, domain="QQ") if lc != 1 else den)

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "RationalFunction":
        return cls(qq_poly(num), qq_poly(den))

    @classmethod
    def from_roots(cls, scale, zeros=(), poles=()) -> "RationalFunction":
        """``scale * prod(t - z) / prod(t - p)``; repeated entries raise the order."""
        num = sp.Poly(sp.Rational(str(Fraction(scale))), T, domain="QQ")
        for z in zeros:
            num = num * sp.Poly(T - sp.Rational(str(Fraction(z))), T, domain="QQ")
        den = sp.Poly(1, T, domain="QQ")
        for p in poles:
            den = den * sp.Poly(T - sp.Rational(str(Fraction(p))), T, domain="QQ")
        return cls(num, den)

    def coeffs(self):
        """Ascending exact coefficients of numerator and denominator."""
        return ([to_fraction(c) for c in reversed(self.num.all_coeffs())],
                [to_fraction(c) for c in reversed(self.den.all_coeffs())])

    def to_json(self) -> dict:
        n, d = self.coeffs()
        return {"num": [str(c) for c in n], "den": [str(c) for c in d]}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        try:
            return cls.from_coeffs(data["num"], data.get("den", ["1"]))
        except (KeyError, AttributeError, TypeError) as exc:
            raise ParseError(f"bad rational function {data!r}") from exc

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __pow__(self, k: int) -> "RationalFunction":
        if k >= 0:
            return RationalFunction(self.num ** k, self.den ** k)
        return RationalFunction(self.den ** -k, self.num ** -k)

    def inverse(self) -> "RationalFunction":
        return self ** -1

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.diff(T) * d - n * d.diff(T), d * d)

    @property
    def degree_at_infinity(self) -> int:
        """Order of vanishing at t = ∞ (``deg den - deg num``)."""
        return self.den.degree() - self.num.degree()

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        n, d = _horner_exact(self.num_q, t), _horner_exact(self.den_q, t)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return n / d

    @cached_property
    def num_q(self) -> tuple[Fraction, ...]:
        return tuple(to_fraction(c) for c in self.num.all_coeffs())

    @cached_property
    def den_q(self) -> tuple[Fraction, ...]:
        return tuple(to_fraction(c) for c in self.den.all_coeffs())

    @cached_property
    def num_f(self) -> np.ndarray:
        return np.array([float(c) for c in self.num_q])

    @cached_property
    def den_f(self) -> np.ndarray:
        return np.array([float(c) for c in self.den_q])

    def evalf(self, t):
        """Vectorized float or complex evaluation."""
        return np.polyval(self.num_f, t) / np.polyval(self.den_f, t)

    def eval_mp(self, t):
        return mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in self.num_q], t) / \
            mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in self.den_q], t)


def _horner_exact(coeffs_desc, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs_desc:
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class RealRoot:
    """An isolated real root of an irreducible factor, with a rational bracket."""

    lo: Fraction
    hi: Fraction
    factor: sp.Poly

    @property
    def exact(self) -> Fraction | None:
        return self.lo if self.lo == self.hi else None

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    def mp_value(self, dps: int = 40):
        """High-precision value refined by bisection on the factor."""
        if self.lo == self.hi:
            return mpmath.mpf(self.lo.numerator) / self.lo.denominator
        with mpmath.workdps(dps + 10):
            coeffs = [mpmath.mpf(to_fraction(c).numerator) / to_fraction(c).denominator
                      for c in self.factor.all_coeffs()]
            return mpmath.findroot(lambda s: mpmath.polyval(coeffs, s),
                                   (mpmath.mpf(self.lo.numerator) / self.lo.denominator,
                                    mpmath.mpf(self.hi.numerator) / self.hi.denominator),
                                   solver="anderson")


def irreducible_factors(p: sp.Poly) -> list[tuple[sp.Poly, int]]:
    """Monic irreducible factors over Q with multiplicities."""
    if p.degree() <= 0:
        return []
    _, facs = p.factor_list()
    out = []
    for f, e in facs:
        f = sp.Poly(f, T, domain="QQ")
        out.append((sp.Poly(f / f.LC(), T, domain="QQ"), e))
    return out


def real_roots_of(f: sp.Poly, eps: Fraction = ROOT_EPS) -> list[RealRoot]:
    """Isolate the real roots of a square-free polynomial to width ``eps``."""
    if f.degree() == 1:
        r = to_fraction(-f.all_coeffs()[1] / f.all_coeffs()[0])
        return [RealRoot(r, r, f)]
    try:
        ivs = f.intervals(eps=sp.Rational(eps.numerator, eps.denominator))
    except Exception as exc:  # sympy raises assorted errors here
        raise RootIsolationFailure(f"could not isolate roots of {f.as_expr()}") from exc
    out = []
    for (a, b), _ in ivs:
        out.append(RealRoot(to_fraction(a), to_fraction(b), f))
    return out


def complex_roots_of(f: sp.Poly) -> list[complex]:
    """Non-real roots of an irreducible factor (both members of each pair)."""
    n_real = f.count_roots()
    if n_real == f.degree():
        return []
    roots = [complex(r) for r in f.nroots(n=30, maxsteps=200)]
    cx = [r for r in roots if abs(r.imag) > 1e-14 * max(1.0, abs(r))]
    if len(cx) != f.degree() - n_real:
        raise RootIsolationFailure(f"root count mismatch for {f.as_expr()}")
    return sorted(cx, key=lambda z: (z.real, z.imag))
