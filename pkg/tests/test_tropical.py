from fractions import Fraction

import pytest

from qindex.errors import NonGenericMomenta, ZeroMultiplicity
from qindex.lattice import LatticePoint, LatticePolygon, double_area
from qindex.laurent import ONE, Q, Q_DIFF, ZERO, HalfLaurent, eval_at_one, qbracket
from qindex.tropical import (Edge, MomentaConfig, TropicalCurve, bg_invariant, bg_weight,
                             check_balancing, check_menelaus_vertex, enumerate_rational, momentum,
                             n_tree_shapes, phase_sign_expansion, r_invariant,
                             random_generic_momenta, real_phase_parity_check, tree_shapes,
                             vertex_multiplicity)

D1 = LatticePolygon.simplex(1)
D2 = LatticePolygon.simplex(2)
POLYS = {"d1": D1, "d2": D2, "square": LatticePolygon.rectangle(1, 1),
         "square2": LatticePolygon.rectangle(2, 2)}


def tripod(dirs, at=(0, 0)):
    """One vertex (node 3) with three leaves."""
    edges = [Edge(3, i, LatticePoint(*d), None) for i, d in enumerate(dirs)]
    return TropicalCurve(3, edges, {3: (Fraction(at[0]), Fraction(at[1]))}, 3)


def test_momentum_examples():
    assert momentum(tripod([(1, 1), (-1, 0), (0, -1)]), 0) == 0
    c = tripod([(1, 1), (-1, 0), (0, -1)], at=(0, 5))
    assert momentum(c, 0) == -5
    assert sum(momentum(c, i) for i in range(3)) == 0


def test_menelaus_examples():
    c = tripod([(1, 0), (0, 1), (-1, -1)], at=(Fraction(3, 7), -2))
    assert check_menelaus_vertex(c, 3) and check_balancing(c, 3)
    assert check_menelaus_vertex(tripod([(2, 1), (-1, 0), (-1, -1)]), 3)


def test_menelaus_detects_moved_vertex():
    # two vertices joined by a horizontal edge; moving one breaks consistency
    edges = [Edge(4, 0, LatticePoint(0, -1), None), Edge(4, 1, LatticePoint(-1, 0), None),
             Edge(4, 5, LatticePoint(1, 1), Fraction(1)), Edge(5, 2, LatticePoint(0, 1), None),
             Edge(5, 3, LatticePoint(1, 0), None)]
    good = TropicalCurve(4, edges, {4: (Fraction(0), Fraction(0)), 5: (Fraction(1), Fraction(1))}, 4)
    assert all(check_menelaus_vertex(good, v) for v in good.vertices)
    bad = TropicalCurve(4, edges, {4: (Fraction(0), Fraction(0)), 5: (Fraction(2), Fraction(1))}, 4)
    assert not check_menelaus_vertex(bad, 5)


@pytest.mark.parametrize("dirs,m", [
    ([(1, 0), (0, 1), (-1, -1)], 1),
    ([(1, 0), (1, 1), (-2, -1)], 1),
    ([(2, 0), (0, 1), (-2, -1)], 2),
    ([(1, 0), (0, 3), (-1, -3)], 3),
])
def test_vertex_multiplicity(dirs, m):
    assert vertex_multiplicity(tripod(dirs), 3) == m


def test_zero_multiplicity():
    with pytest.raises(ZeroMultiplicity):
        vertex_multiplicity(tripod([(1, 0), (-1, 0), (0, 0)]), 3)


def test_bg_weight_examples():
    assert bg_weight(tripod([(1, 0), (0, 1), (-1, -1)])) == ONE
    assert bg_weight(tripod([(1, 0), (0, 3), (-1, -3)])) == Q + 1 + HalfLaurent.monomial(-1)


def test_tree_shapes_count():
    for m in range(3, 8):
        shapes = list(tree_shapes(m))
        assert len(shapes) == n_tree_shapes(m)
        assert len({tuple(sorted(s)) for s in shapes}) == len(shapes)
    assert n_tree_shapes(9) == 135135


def test_line_enumeration():
    cfg = MomentaConfig(D1, [Fraction(3, 2), Fraction(-5, 7), Fraction(-11, 14)])
    curves = enumerate_rational(D1, cfg)
    assert len(curves) == 1
    assert vertex_multiplicity(curves[0], curves[0].vertices[0]) == 1
    assert r_invariant(D1, cfg) == Q_DIFF


def test_conic_unique():
    cfg, curves = random_generic_momenta(D2, 4)
    assert eval_at_one(bg_invariant(D2, cfg)) == 1
    assert r_invariant(D2, cfg) == Q_DIFF ** 4 * bg_invariant(D2, cfg)


def test_parallel_equal_momenta_rejected():
    # the first two leaves both point along (0, -1)
    cfg = MomentaConfig(D2, [1, 1, 2, -3, 4, -5])
    with pytest.raises(NonGenericMomenta):
        enumerate_rational(D2, cfg)


def test_momenta_must_sum_to_zero():
    with pytest.raises(NonGenericMomenta):
        MomentaConfig(D1, [1, 2, 3])


def test_phase_expansion_single_vertex():
    ph = phase_sign_expansion(tripod([(1, 0), (0, 1), (-1, -1)]))
    assert {(p.quantum_index, p.sign) for p in ph} == {(Fraction(1, 2), 1), (Fraction(-1, 2), -1)}


def test_parity_examples():
    c = tripod([(1, 0), (0, 1), (-1, -1)])
    assert real_phase_parity_check(c, {0: 1, 1: 0, 2: 0})
    assert not real_phase_parity_check(c, {0: 0, 1: 0, 2: 0})
    assert real_phase_parity_check(tripod([(2, 0), (0, 1), (-2, -1)]), {0: 0, 1: 0, 2: 0})


@pytest.fixture(scope="module", params=sorted(POLYS))
def enumerated(request):
    poly = POLYS[request.param]
    runs = [random_generic_momenta(poly, seed) for seed in (1, 2, 3)]
    return poly, runs


def test_bg_invariance(enumerated):
    poly, runs = enumerated
    bgs = [sum((bg_weight(c) for c in curves), start=ZERO) for _, curves in runs]
    assert bgs[0] == bgs[1] == bgs[2]
    assert all(v > 0 for v in bgs[0].terms.values())


def test_curve_properties(enumerated):
    poly, runs = enumerated
    bound = Fraction(double_area(poly), 2)
    for cfg, curves in runs:
        keys = [c.key() for c in curves]
        assert len(set(keys)) == len(keys)
        for c in curves:
            assert all(check_balancing(c, v) and check_menelaus_vertex(c, v) for v in c.vertices)
            moms = [momentum(c, i) for i in range(c.n_leaves)]
            assert sum(moms) == 0 and tuple(moms) == cfg.mu
            ph = phase_sign_expansion(c)
            assert len(ph) == 2 ** len(c.vertices)
            assert all(abs(p.quantum_index) <= bound for p in ph)
            lhs = sum((HalfLaurent.monomial(p.quantum_index, p.sign) for p in ph), start=ZERO)
            rhs = ONE
            for v in c.vertices:
                rhs = rhs * (qbracket(vertex_multiplicity(c, v)) * Q_DIFF)
            assert lhs == rhs


def test_json_export(enumerated):
    _, runs = enumerated
    cfg, curves = runs[0]
    assert MomentaConfig.from_json(cfg.to_json()) == cfg
    data = curves[0].to_json()
    assert {"edges", "anchor", "vertices"} <= set(data)
