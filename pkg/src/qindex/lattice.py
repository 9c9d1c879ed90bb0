"""Convex lattice polygons: sides, primitive outward normals, exact areas.

Areas are always carried doubled, as integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple

from .errors import DegeneratePolygon


class LatticePoint(NamedTuple):
    a: int
    b: int

    def __add__(self, other):
        return LatticePoint(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return LatticePoint(self.a - other[0], self.b - other[1])

    def __neg__(self):
        return LatticePoint(-self.a, -self.b)

    def scale(self, k: int) -> "LatticePoint":
        return LatticePoint(k * self.a, k * self.b)


def cross(u, v):
    """Wedge product u ∧ v = u1 v2 - u2 v1."""
    return u[0] * v[1] - u[1] * v[0]


def primitive(v) -> tuple[LatticePoint, int]:
    """Split an integer vector into (primitive vector, lattice length)."""
    g = gcd(abs(v[0]), abs(v[1]))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return LatticePoint(v[0] // g, v[1] // g), g


@dataclass(frozen=True)
class Side:
    start: LatticePoint
    end: LatticePoint
    normal: LatticePoint
    int_length: int

    @property
    def direction(self) -> LatticePoint:
        """Primitive tangent vector, counterclockwise along the boundary."""
        return primitive(self.end - self.start)[0]


@dataclass(frozen=True)
class LatticePolygon:
    """Strictly convex lattice polygon with counterclockwise vertices.

    The constructor normalizes its input: collinear boundary points are
    dropped, clockwise input is reversed and the rotation is fixed so the
    lexicographically smallest vertex comes first.
    """

    vertices: tuple[LatticePoint, ...]

    def __init__(self, vertices: Iterable):
        object.__setattr__(self, "vertices", _normalize(vertices))

    def __repr__(self):
        return f"LatticePolygon({[tuple(v) for v in self.vertices]})"

    @classmethod
    def simplex(cls, d: int) -> "LatticePolygon":
        return cls([(0, 0), (d, 0), (0, d)])

    @classmethod
    def rectangle(cls, w: int, h: int) -> "LatticePolygon":
        return cls([(0, 0), (w, 0), (w, h), (0, h)])

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "LatticePolygon":
        return cls([tuple(int(c) for c in v) for v in data["vertices"]])

    def scaled(self, k: int) -> "LatticePolygon":
        return LatticePolygon([v.scale(k) for v in self.vertices])

    def same_shape(self, other: "LatticePolygon") -> bool:
        """Equality up to lattice translation."""
        o1, o2 = self.vertices[0], other.vertices[0]
        return [v - o1 for v in self.vertices] == [v - o2 for v in other.vertices]


def _shoelace2(pts) -> int:
    n = len(pts)
    return sum(cross(pts[i], pts[(i + 1) % n]) for i in range(n))


def _normalize(vertices) -> tuple[LatticePoint, ...]:
    pts = []
    for v in vertices:
        if len(v) != 2 or any(int(c) != c for c in v):
            raise DegeneratePolygon(f"vertex {v!r} is not an integer pair")
        p = LatticePoint(int(v[0]), int(v[1]))
        if not pts or pts[-1] != p:
            pts.append(p)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        raise DegeneratePolygon("a polygon needs at least 3 distinct vertices")
    if _shoelace2(pts) < 0:
        pts.reverse()
    # drop collinear points (repeat until stable)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            p, q, r = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if cross(q - p, r - q) == 0:
                if _dot(q - p, r - q) < 0:
                    raise DegeneratePolygon(f"boundary doubles back at {tuple(q)}")
                pts.pop(i)
                changed = True
                break
    if len(pts) < 3 or _shoelace2(pts) <= 0:
        raise DegeneratePolygon("polygon has zero area")
    n = len(pts)
    for i in range(n):
        p, q, r = pts[i - 1], pts[i], pts[(i + 1) % n]
        if cross(q - p, r - q) <= 0:
            raise DegeneratePolygon(f"polygon is not convex at vertex {tuple(q)}")
    # all left turns is not enough: the boundary must also wind exactly once
    turning = sum(
        math.atan2(cross(pts[(i + 1) % n] - pts[i], pts[(i + 2) % n] - pts[(i + 1) % n]),
                   _dot(pts[(i + 1) % n] - pts[i], pts[(i + 2) % n] - pts[(i + 1) % n]))
        for i in range(n)
    )
    if abs(turning - 2 * math.pi) > 1e-6:
        raise DegeneratePolygon("polygon boundary winds more than once")
    k = min(range(n), key=lambda i: pts[i])
    return tuple(pts[k:] + pts[:k])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def sides(poly: LatticePolygon) -> list[Side]:
    out = []
    vs = poly.vertices
    for i, p in enumerate(vs):
        q = vs[(i + 1) % len(vs)]
        d, length = primitive(q - p)
        # outward normal of a counterclockwise boundary is the tangent turned clockwise
        out.append(Side(p, q, LatticePoint(d.b, -d.a), length))
    return out


def double_area(poly: LatticePolygon) -> int:
    return _shoelace2(poly.vertices)


def boundary_lattice_count(poly: LatticePolygon) -> int:
    return sum(s.int_length for s in sides(poly))


def interior_lattice_count(poly: LatticePolygon) -> int:
    """Number of interior lattice points, by Pick's formula."""
    twice = double_area(poly) - boundary_lattice_count(poly) + 2
    assert twice % 2 == 0
    return twice // 2


def contains(poly: LatticePolygon, p, strict: bool = False) -> bool:
    """Point-in-polygon test with exact arithmetic."""
    for s in sides(poly):
        c = cross(s.end - s.start, (p[0] - s.start[0], p[1] - s.start[1]))
        if c < 0 or (strict and c == 0):
            return False
    return True


def lattice_points(poly: LatticePolygon):
    """All lattice points of the closed polygon, by direct scan."""
    xs = [v.a for v in poly.vertices]
    ys = [v.b for v in poly.vertices]
    for a in range(min(xs), max(xs) + 1):
        for b in range(min(ys), max(ys) + 1):
            if contains(poly, (a, b)):
                yield LatticePoint(a, b)


def implied_polygon(vectors) -> LatticePolygon:
    """Polygon whose outward normals, with multiplicity, are ``vectors``.

    ``vectors`` is a zero-sum collection of nonzero integer vectors; each is
    rotated a quarter turn counterclockwise, sorted by angle and chained.
    """
    vs = [LatticePoint(*v) for v in vectors]
    if sum(v.a for v in vs) != 0 or sum(v.b for v in vs) != 0:
        raise DegeneratePolygon("normal vectors do not sum to zero")
    edges = sorted((LatticePoint(-v.b, v.a) for v in vs), key=lambda e: math.atan2(e.b, e.a))
    pts = [LatticePoint(0, 0)]
    for e in edges[:-1]:
        pts.append(pts[-1] + e)
    return LatticePolygon(pts)
