"""Nodal cubics with an isolated real point, and the squared Harnack conic.

Shows the rotation number, the signed count E of solitary points and how the
two combine into the quantum index, then compares Gauss map passages plus
solitary signs with the linking numbers of the index diagram.
"""
from fractions import Fraction

from qindex.numerics import co_ab_check, rot_log, solitary_points
from qindex.rational_curves import (fr2, index_diagram, is_transversal, nonzero_linking_points,
                                    quantum_index_combinatorial)
from qindex.suite import NODAL_CUBICS, conic, nodal_cubic


def report(name, c):
    k = quantum_index_combinatorial(c)
    rot = rot_log(c)
    sols = solitary_points(c)
    E = sum(s.sign for s in sols)
    print(f"{name}: k = {k}, Rot = {rot}, E = {E}, -Rot/2 + E = {Fraction(-rot, 2) + E}")
    for s in sols:
        print(f"    solitary point at t = {s.param:.6f}, sign {s.sign:+d}, real index {tuple(s.real_index)}")
    if is_transversal(c):
        eps, bad = co_ab_check(c)
        print(f"    linking identity along direction {tuple(map(str, eps))}: "
              f"{'all lattice points agree' if not bad else bad}")
    else:
        print("    tangent to the boundary, so the rotation identity does not apply")


def main():
    for name, kw in NODAL_CUBICS.items():
        report(name, nodal_cubic(**kw))
    sq = fr2(conic("harnack"))
    report("harnack conic squared", sq)
    pts = nonzero_linking_points(index_diagram(sq))
    print(f"    {len(pts)} lattice points with nonzero linking, "
          f"{len(solitary_points(sq))} solitary points")


if __name__ == "__main__":
    main()
