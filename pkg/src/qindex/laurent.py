"""Laurent polynomials in q^(1/2) with integer coefficients.

Exponents are stored doubled, so ``{3: 1}`` is q^(3/2).  Values are
immutable and hashable.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import HalfIntegerExponent, InvalidMultiplicity


class HalfLaurent:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if int(e) != e or int(c) != c:
                raise TypeError("doubled exponents and coefficients must be integers")
            if c:
                clean[int(e)] = clean.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(clean.items()) if c}

    @classmethod
    def monomial(cls, exponent, coeff: int = 1) -> "HalfLaurent":
        """coeff * q^exponent; ``exponent`` must be a half-integer."""
        d = Fraction(exponent) * 2
        if d.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a half-integer")
        return cls({int(d): coeff})

    @classmethod
    def constant(cls, c: int) -> "HalfLaurent":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfLaurent.constant(other)
        return isinstance(other, HalfLaurent) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def coefficient(self, exponent) -> int:
        return self._terms.get(int(Fraction(exponent) * 2), 0)

    def exponents(self) -> list[Fraction]:
        return [Fraction(e, 2) for e in self._terms]

    def substitute_inverse(self) -> "HalfLaurent":
        """The polynomial with q replaced by 1/q."""
        return HalfLaurent({-e: c for e, c in self._terms.items()})

    def __repr__(self):
        return f"HalfLaurent({self.render()!r})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Canonical text form, highest exponent first: ``q - 2 + q^-1``."""
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag} {mono}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> dict[str, int]:
        """JSON form keyed by the doubled exponent."""
        return {str(e): c for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "HalfLaurent":
        return cls({int(e): int(c) for e, c in data.items()})


def _coerce(x) -> HalfLaurent:
    if isinstance(x, HalfLaurent):
        return x
    if isinstance(x, int):
        return HalfLaurent.constant(x)
    return NotImplemented


ZERO = HalfLaurent()
ONE = HalfLaurent({0: 1})
Q = HalfLaurent({2: 1})
# q^(1/2) - q^(-1/2)
Q_DIFF = HalfLaurent({1: 1, -1: -1})


def qbracket(m: int) -> HalfLaurent:
    """Symmetric quantum integer [m]_q = q^((m-1)/2) + ... + q^(-(m-1)/2)."""
    if m <= 0:
        raise InvalidMultiplicity(f"quantum integer needs m >= 1, got {m}")
    return HalfLaurent({e: 1 for e in range(-(m - 1), m, 2)})


def eval_at_one(p: HalfLaurent) -> int:
    return sum(c for _, c in p)


def eval_at_minus_one(p: HalfLaurent) -> int:
    total = 0
    for e, c in p:
        if e % 2:
            raise HalfIntegerExponent(f"q^({e}/2) has no value at q = -1 in Z")
        total += c if (e // 2) % 2 == 0 else -c
    return total


def is_symmetric(p: HalfLaurent) -> bool:
    return p == p.substitute_inverse()


def has_nonnegative_coefficients(p: HalfLaurent) -> bool:
    return all(c >= 0 for _, c in p)
