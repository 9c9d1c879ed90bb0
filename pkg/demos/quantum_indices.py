"""Quantum indices of a line, the conic representatives and a few circles.

For each curve we print the logarithmic area divided by pi^2 next to the
signed area of its index diagram.  Pass --out DIR to also get SVG pictures
of the Log images.

    python demos/quantum_indices.py --out /tmp/figs
"""
import argparse
from pathlib import Path

from qindex import svg
from qindex.errors import NonRealBoundary
from qindex.numerics import area_log
from qindex.rational_curves import diagram_area, index_diagram, negative_counts
from qindex.suite import CONICS, circle, conic, line


def show(name, curve, out=None):
    k_num = area_log(curve).k
    try:
        diag = index_diagram(curve)
        k_diag = str(diagram_area(diag))
    except NonRealBoundary:
        diag, k_diag = None, "n/a (complex boundary points)"
    print(f"{name:<22} area/pi^2 = {k_num:+.8f}   diagram area = {k_diag}")
    if out is not None:
        panels = [svg.curve_panel(curve)]
        if diag is not None:
            panels.append(svg.diagram_panel(diag, x_off=svg.SIZE))
        (out / f"{name}.svg").write_text(svg.render(panels, name))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)

    print("x = t, y = 1 - t, both orientations")
    show("line", line(), args.out)
    show("line_reversed", line(-1), args.out)

    print("\nconics, labelled by negative boundary points per side")
    for name in CONICS:
        c = conic(name)
        print(f"  sides {negative_counts(c)}")
        show(f"conic_{name}", c, args.out)

    # the boundary points of a circle are complex, so only the Log area is available
    print("\ncircles (a, b, r)")
    for a, b, r in [(1, 1, 2), (3, 3, 4), (-3, 3, 4), (3, 4, 5)]:
        show(f"circle_{a}_{b}_{r}", circle(a, b, r), args.out)


if __name__ == "__main__":
    main()
