"""Rational tropical curves through boundary momenta.

Leaves are dual to the sides of the Newton polygon (``m_j`` leaves of
weight one on side ``j``).  A curve passes through the boundary points
determined by ``mu`` when its ``j``-th leaf, oriented towards infinity, has
momentum ``mu[j]``; the momentum of an oriented line is ``p ∧ w·u`` for any
point ``p`` on it.

Every labeled trivalent tree with ``m`` leaves is tried: edge directions
follow from balancing, and the anchor position plus the ``m - 3`` bounded
edge lengths solve a square integer linear system built from the first
``m - 1`` leaf momenta.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Sequence

import numpy as np

from .errors import NonGenericMomenta, ParseError, ZeroMultiplicity
from .lattice import LatticePoint, LatticePolygon, boundary_lattice_count, cross, double_area, sides
from .laurent import ONE, Q_DIFF, ZERO, HalfLaurent, qbracket

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Leaf:
    direction: LatticePoint
    weight: int
    side_id: int


@dataclass(frozen=True)
class TropicalDegree:
    leaves: tuple[Leaf, ...]

    def __post_init__(self):
        sx = sum(l.weight * l.direction.a for l in self.leaves)
        sy = sum(l.weight * l.direction.b for l in self.leaves)
        if (sx, sy) != (0, 0):
            raise ValueError("leaf directions are not balanced")

    @classmethod
    def of_polygon(cls, poly: LatticePolygon) -> "TropicalDegree":
        leaves = []
        for j, s in enumerate(sides(poly)):
            leaves.extend(Leaf(s.normal, 1, j) for _ in range(s.int_length))
        return cls(tuple(leaves))

    def __len__(self):
        return len(self.leaves)


@dataclass(frozen=True)
class MomentaConfig:
    polygon: LatticePolygon
    mu: tuple[Fraction, ...]

    def __init__(self, polygon: LatticePolygon, mu: Sequence):
        object.__setattr__(self, "polygon", polygon)
        object.__setattr__(self, "mu", tuple(Fraction(x) for x in mu))
        m = boundary_lattice_count(polygon)
        if len(self.mu) != m:
            raise ParseError(f"expected {m} momenta, got {len(self.mu)}")
        if sum(self.mu) != 0:
            raise NonGenericMomenta("momenta must sum to zero")

    @property
    def degree(self) -> TropicalDegree:
        return TropicalDegree.of_polygon(self.polygon)

    def check_generic(self) -> None:
        """Reject configurations on the obvious walls.

        A proper sub-multiset of leaves with balanced directions and
        zero-sum momenta gives reducible solutions; two leaves on the same
        oriented line give overlapping edges.
        """
        leaves = self.degree.leaves
        m = len(leaves)
        for i, j in itertools.combinations(range(m), 2):
            if leaves[i].direction == leaves[j].direction and self.mu[i] == self.mu[j]:
                raise NonGenericMomenta(f"leaves {i} and {j} lie on the same line")
        for r in range(2, m - 1):
            for sub in itertools.combinations(range(m), r):
                if sum(leaves[k].direction.a for k in sub) == 0 and \
                        sum(leaves[k].direction.b for k in sub) == 0 and \
                        sum(self.mu[k] for k in sub) == 0:
                    raise NonGenericMomenta(f"leaves {sub} balance with zero total momentum")

    def to_json(self) -> dict:
        return {"polygon": self.polygon.to_json(), "mu": [str(x) for x in self.mu]}

    @classmethod
    def from_json(cls, data: dict) -> "MomentaConfig":
        try:
            poly = LatticePolygon.from_json(data["polygon"])
            mu = [Fraction(x) for x in data["mu"]]
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad momenta file: {exc}") from exc
        return cls(poly, mu)


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    vector: LatticePoint  # weighted direction from tail to head
    length: Fraction | None  # None for leaves

    @property
    def weight(self) -> int:
        return gcd(abs(self.vector.a), abs(self.vector.b))

    @property
    def is_leaf(self) -> bool:
        return self.length is None


@dataclass
class TropicalCurve:
    """Parameterized trivalent tree in the plane.

    Nodes ``0 .. m-1`` are the leaves (points at infinity), the rest are
    internal vertices.  Leaf edges point from their vertex to infinity.
    """

    n_leaves: int
    edges: list[Edge]
    positions: dict[int, tuple[Fraction, Fraction]]
    anchor_vertex: int
    shape_id: int = -1

    _incident: dict = field(default=None, repr=False, compare=False)

    @property
    def vertices(self) -> list[int]:
        return sorted(v for v in self.positions)

    @property
    def anchor(self):
        return self.positions[self.anchor_vertex]

    def incident(self, v: int) -> list[tuple[Edge, LatticePoint]]:
        """Edges at ``v`` with their weighted direction oriented outwards."""
        out = []
        for e in self.edges:
            if e.tail == v:
                out.append((e, e.vector))
            elif e.head == v:
                out.append((e, -e.vector))
        return out

    def leaf_edge(self, leaf: int) -> Edge:
        for e in self.edges:
            if e.head == leaf and e.is_leaf:
                return e
        raise KeyError(leaf)

    def key(self):
        """Identity: labeled tree plus exact realization."""
        adj = tuple(sorted((min(e.tail, e.head), max(e.tail, e.head)) for e in self.edges))
        pos = tuple(sorted(self.positions.items()))
        return adj, pos

    def to_json(self) -> dict:
        return {
            "shape_id": self.shape_id,
            "edges": [
                {"tail": e.tail, "head": e.head, "direction": list(e.vector),
                 "weight": e.weight, "length": None if e.length is None else str(e.length)}
                for e in self.edges
            ],
            "anchor": {"vertex": self.anchor_vertex, "position": [str(c) for c in self.anchor]},
            "vertices": {
                str(v): {"position": [str(c) for c in p], "multiplicity": vertex_multiplicity(self, v)}
                for v, p in sorted(self.positions.items())
            },
        }


def momentum(curve: TropicalCurve, leaf: int) -> Fraction:
    e = curve.leaf_edge(leaf)
    p = curve.positions[e.tail]
    mu = cross(p, e.vector)
    further = (p[0] + e.vector.a, p[1] + e.vector.b)
    assert cross(further, e.vector) == mu
    return mu


def check_menelaus_vertex(curve: TropicalCurve, v: int) -> bool:
    """Momenta of the three lines through the edges at ``v`` cancel.

    Leaf lines are taken through ``v`` itself, bounded edges through their
    other endpoint, so an inconsistent vertex position is detected.
    """
    total = Fraction(0)
    for e, vec in curve.incident(v):
        if e.is_leaf:
            p = curve.positions[v]
        else:
            p = curve.positions[e.head if e.tail == v else e.tail]
        total += cross(p, vec)
    return total == 0


def check_balancing(curve: TropicalCurve, v: int) -> bool:
    vecs = [vec for _, vec in curve.incident(v)]
    return sum(u.a for u in vecs) == 0 and sum(u.b for u in vecs) == 0


def vertex_multiplicity(curve: TropicalCurve, v: int) -> int:
    vecs = [vec for _, vec in curve.incident(v)]
    if len(vecs) != 3:
        raise ValueError(f"vertex {v} is not trivalent")
    dets = {abs(cross(a, b)) for a, b in itertools.combinations(vecs, 2)}
    assert len(dets) == 1, "unbalanced vertex"
    m = dets.pop()
    if m == 0:
        raise ZeroMultiplicity(f"parallel edges at vertex {v}")
    return m


def bg_weight(curve: TropicalCurve) -> HalfLaurent:
    w = ONE
    for v in curve.vertices:
        w = w * qbracket(vertex_multiplicity(curve, v))
    return w


@dataclass(frozen=True)
class SignedPhase:
    vertex_signs: tuple[tuple[int, int], ...]
    quantum_index: Fraction
    sign: int


def phase_sign_expansion(curve: TropicalCurve) -> list[SignedPhase]:
    """One entry per distribution of vertex signs.

    A vertex of multiplicity ``m`` contributes ``±m/2`` to the quantum
    index; each negative vertex flips the overall sign.
    """
    verts = curve.vertices
    mults = [vertex_multiplicity(curve, v) for v in verts]
    out = []
    for signs in itertools.product((1, -1), repeat=len(verts)):
        k = sum(Fraction(s * mv, 2) for s, mv in zip(signs, mults))
        out.append(SignedPhase(tuple(zip(verts, signs)), k, (-1) ** signs.count(-1)))
    return out


def real_phase_parity_check(curve: TropicalCurve, phases: dict[int, int]) -> bool:
    """Check the phase condition ``Σ w·σ ≡ π·m(v)`` at every vertex.

    ``phases`` maps an edge index to its real phase in units of π (0 or 1);
    phases in {0, π} do not depend on the edge orientation.
    """
    for v in curve.vertices:
        total = 0
        for idx, e in enumerate(curve.edges):
            if v in (e.tail, e.head):
                total += e.weight * phases[idx]
        if (total - vertex_multiplicity(curve, v)) % 2:
            return False
    return True


# ---------------------------------------------------------------- enumeration

def n_tree_shapes(m: int) -> int:
    out = 1
    for k in range(3, 2 * m - 4, 2):
        out *= k
    return out


def tree_shapes(m: int) -> Iterator[list[tuple[int, int]]]:
    """All labeled trivalent trees with leaves ``0..m-1`` by leaf insertion.

    Internal vertices are numbered from ``m`` in order of creation.
    """
    if m < 3:
        raise ValueError("need at least three leaves")

    def grow(edges, k):
        if k == m:
            yield edges
            return
        w = m + k - 2
        for i, (a, b) in enumerate(edges):
            yield from grow(edges[:i] + [(a, w), (w, b), (w, k)] + edges[i + 1:], k + 1)

    yield from grow([(m, 0), (m, 1), (m, 2)], 3)


def _bareiss_solve(rows: list[list[int]]):
    """Exact solve of an augmented integer system ``[A | b]``.

    Bareiss elimination keeps every entry integral.  Returns
    ``(det, numerators)`` with ``x_i = numerators[i] / det``; when ``A`` is
    singular returns ``(0, consistent)``.
    """
    a = [r[:] for r in rows]
    n = len(a)
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0, _consistent(rows)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            ai[:] = [0] * (k + 1) + [(akk * ai[j] - aik * rowk[j]) // prev for j in range(k + 1, n + 1)]
        prev = akk
    det = a[n - 1][n - 1]
    if det == 0:
        return 0, _consistent(rows)
    # det * x_i is an integer (Cramer), so each division below is exact
    num = [0] * n
    for i in range(n - 1, -1, -1):
        acc = det * a[i][n] - sum(a[i][j] * num[j] for j in range(i + 1, n))
        q, r = divmod(acc, a[i][i])
        assert r == 0
        num[i] = q
    return det, num


def _consistent(rows) -> bool:
    m = np.array([[Fraction(x) for x in r] for r in rows], dtype=object)
    return _rank(m[:, :-1]) == _rank(m)


def _rank(mat) -> int:
    a = [list(r) for r in mat]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


class _ShapeSolver:
    """Per-configuration state shared across all tree shapes."""

    def __init__(self, config: MomentaConfig):
        self.config = config
        self.leaves = config.degree.leaves
        self.m = len(self.leaves)
        for l in self.leaves:
            if l.weight != 1:
                raise ValueError("enumeration supports weight-one leaves only")
        self.dirs = [l.direction for l in self.leaves]
        self.scale = lcm(*(x.denominator for x in config.mu))
        self.rhs = [int(x * self.scale) for x in config.mu]

    def solve(self, shape_id: int, edges) -> TropicalCurve | None:
        m = self.m
        n_nodes = 2 * m - 2
        adj = [[] for _ in range(n_nodes)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        root = adj[0][0]
        parent = [-1] * n_nodes
        parent[root] = root
        order = [root]
        for v in order:
            for w in adj[v]:
                if parent[w] == -1:
                    parent[w] = v
                    order.append(w)
        sums = [None] * n_nodes
        dirs = self.dirs
        for v in reversed(order):
            if v < m:
                sums[v] = dirs[v]
            else:
                sx = sy = 0
                for w in adj[v]:
                    if w != parent[v] or v == root:
                        if parent[w] == v:
                            sx += sums[w][0]
                            sy += sums[w][1]
                sums[v] = (sx, sy)
        # reject contracted edges and parallel edges at a vertex
        for v in range(m, n_nodes):
            if v != root and sums[v] == (0, 0):
                return None
            kids = [w for w in adj[v] if parent[w] == v]
            a, b = sums[kids[0]], sums[kids[1]]
            if a[0] * b[1] - a[1] * b[0] == 0:
                return None
        # unknowns: anchor (2) then one length per non-root internal vertex
        col = {}
        for v in order:
            if v >= m and v != root:
                col[v] = 2 + len(col)
        path = {root: ()}
        for v in order[1:]:
            p = parent[v]
            path[v] = path[p] + ((v,) if v >= m else ())
        rows = []
        for j in range(m - 1):
            n = dirs[j]
            row = [0] * (m - 1) + [self.rhs[j]]
            row[0] = n[1]
            row[1] = -n[0]
            for c in path[parent[j]]:
                s = sums[c]
                row[col[c]] = s[0] * n[1] - s[1] * n[0]
            rows.append(row)
        det, sol = _bareiss_solve(rows)
        if det == 0:
            if sol:
                raise NonGenericMomenta(
                    f"tree shape {shape_id} admits a positive-dimensional family", tree_id=shape_id)
            return None
        lengths = {}
        for v, c in col.items():
            num = sol[c]
            if num == 0:
                raise NonGenericMomenta(f"tree shape {shape_id} has a contracted edge", tree_id=shape_id)
            if (num > 0) != (det > 0):
                return None
            lengths[v] = Fraction(num, det * self.scale)
        anchor = (Fraction(sol[0], det * self.scale), Fraction(sol[1], det * self.scale))
        positions = {root: anchor}
        curve_edges = []
        for v in order[1:]:
            p = parent[v]
            vec = LatticePoint(*sums[v])
            if v < m:
                curve_edges.append(Edge(p, v, vec, None))
            else:
                px, py = positions[p]
                ell = lengths[v]
                positions[v] = (px + ell * vec.a, py + ell * vec.b)
                curve_edges.append(Edge(p, v, vec, ell))
        curve = TropicalCurve(m, curve_edges, positions, root, shape_id)
        last = m - 1
        if momentum(curve, last) != self.config.mu[last]:
            raise AssertionError("momentum of the last leaf is not implied by the others")
        return curve


def enumerate_rational(poly: LatticePolygon, config: MomentaConfig) -> list[TropicalCurve]:
    """All rational tropical curves of degree ``poly`` through ``config``."""
    if not config.polygon.same_shape(poly):
        raise ParseError("momenta were given for a different polygon")
    config.check_generic()
    solver = _ShapeSolver(config)
    curves = []
    seen = set()
    for shape_id, edges in enumerate(tree_shapes(solver.m)):
        curve = solver.solve(shape_id, edges)
        if curve is None:
            continue
        key = curve.key()
        if key in seen:
            raise AssertionError(f"duplicate curve from shape {shape_id}")
        seen.add(key)
        _check_simple(curve)
        curves.append(curve)
    log.debug("%d curves from %d shapes", len(curves), n_tree_shapes(solver.m))
    return curves


def _check_simple(curve: TropicalCurve) -> None:
    """No vertex may sit on another edge, and no two edges may overlap."""
    segs = []
    for idx, e in enumerate(curve.edges):
        p = curve.positions[e.tail]
        if e.is_leaf:
            segs.append((idx, p, e.vector, None))
        else:
            segs.append((idx, p, e.vector, e.length))
    for v, pv in curve.positions.items():
        for idx, p, d, length in segs:
            e = curve.edges[idx]
            if v in (e.tail, e.head):
                continue
            if _on_segment(pv, p, d, length):
                raise NonGenericMomenta(f"vertex {v} lies on edge {idx}", tree_id=curve.shape_id)
    for (i, p, d, l1), (j, q, d2, l2) in itertools.combinations(segs, 2):
        if cross(d, d2) != 0:
            continue
        if cross((q[0] - p[0], q[1] - p[1]), d) != 0:
            continue
        # collinear: compare parameter intervals along d
        dd = d[0] * d[0] + d[1] * d[1]
        t0 = Fraction(0)
        t1 = l1 if l1 is not None else None
        s = [((q[0] - p[0]) * d[0] + (q[1] - p[1]) * d[1]) / dd]
        step = Fraction(d2[0] * d[0] + d2[1] * d[1], dd)
        s1 = None if l2 is None else s[0] + step * l2
        lo2, hi2 = s[0], s1
        if hi2 is None:
            lo2, hi2 = (s[0], None) if step > 0 else (None, s[0])
        elif hi2 < lo2:
            lo2, hi2 = hi2, lo2
        lo1, hi1 = t0, t1
        lo = max(x for x in (lo1, lo2) if x is not None) if (lo1 is not None or lo2 is not None) else None
        cand_hi = [x for x in (hi1, hi2) if x is not None]
        hi = min(cand_hi) if cand_hi else None
        if lo is None or hi is None or lo < hi:
            raise NonGenericMomenta(f"edges {i} and {j} overlap", tree_id=curve.shape_id)


def _on_segment(pt, p, d, length) -> bool:
    w = (pt[0] - p[0], pt[1] - p[1])
    if cross(w, d) != 0:
        return False
    t = Fraction(w[0] * d[0] + w[1] * d[1], 1) / (d[0] * d[0] + d[1] * d[1])
    if t <= 0:
        return False
    return length is None or t < length


def bg_invariant(poly: LatticePolygon, config: MomentaConfig) -> HalfLaurent:
    total = ZERO
    for c in enumerate_rational(poly, config):
        total = total + bg_weight(c)
    return total


def r_from_curves(curves) -> HalfLaurent:
    total = ZERO
    for c in curves:
        for ph in phase_sign_expansion(c):
            total = total + HalfLaurent.monomial(ph.quantum_index, ph.sign)
    return total


def r_invariant(poly: LatticePolygon, config: MomentaConfig) -> HalfLaurent:
    """Refined real count assembled from the vertex-sign expansion."""
    return r_from_curves(enumerate_rational(poly, config))


def identity_rhs(poly: LatticePolygon, bg: HalfLaurent) -> HalfLaurent:
    return Q_DIFF ** (boundary_lattice_count(poly) - 2) * bg


def quantum_index_bound(poly: LatticePolygon) -> Fraction:
    return Fraction(double_area(poly), 2)


def random_momenta(poly: LatticePolygon, rng: np.random.Generator) -> MomentaConfig:
    """Integers in [-10^6, 10^6] scaled by 1/1000, completed to zero sum."""
    m = boundary_lattice_count(poly)
    ints = [int(x) for x in rng.integers(-10**6, 10**6, size=m - 1, endpoint=True)]
    mu = [Fraction(x, 1000) for x in ints]
    mu.append(-sum(mu))
    return MomentaConfig(poly, mu)


def random_generic_momenta(poly: LatticePolygon, seed: int, max_tries: int = 50):
    """Rejection-sample momenta until enumeration raises no genericity error.

    Returns ``(config, curves)``.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        config = random_momenta(poly, rng)
        try:
            curves = enumerate_rational(poly, config)
        except NonGenericMomenta as exc:
            log.info("resampling momenta: %s", exc)
            continue
        return config, curves
    raise NonGenericMomenta(f"no generic momenta found in {max_tries} draws")
