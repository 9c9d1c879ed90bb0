"""Command line entry point.

Every command prints one JSON report.  Exit codes: 0 ok, 1 a check failed,
2 bad input, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import InputError, NonRealBoundary, NotToricTypeI, NumericFailure, QIndexError
from .lattice import (LatticePolygon, boundary_lattice_count, double_area, interior_lattice_count,
                      sides)
from .laurent import eval_at_one, has_nonnegative_coefficients, is_symmetric
from .rational_curves import (IndexDiagram, RealRationalCurve, boundary_divisor, curve_polygon,
                              diagram_area, diagram_from_boundary_sequence, index_diagram)
from . import svg

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("qindex")


class Reporter:
    def __init__(self, args):
        self.args = args
        self.inputs: dict[str, str] = {}

    def load(self, name: str, source: str):
        """JSON from a file, or a named polygon like ``simplex:3`` / ``rect:2,1``."""
        if name == "polygon" and ":" in source and not Path(source).exists():
            kind, _, arg = source.partition(":")
            self.inputs[name] = source
            try:
                if kind == "simplex":
                    return LatticePolygon.simplex(int(arg)).to_json()
                if kind == "rect":
                    w, h = (int(s) for s in arg.split(","))
                    return LatticePolygon.rectangle(w, h).to_json()
            except ValueError as exc:
                raise InputError(f"bad polygon shorthand {source!r}") from exc
            raise InputError(f"unknown polygon shorthand {source!r}")
        try:
            raw = Path(source).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
        self.inputs[name] = "sha256:" + hashlib.sha256(raw).hexdigest()
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"{source} is not JSON: {exc}") from exc

    def emit(self, result: dict, status: int = EXIT_OK) -> int:
        report = {"tool": "qindex", "version": __version__, "command": self.args.command,
                  "seed": self.args.seed, "tol": self.args.tol, "inputs": dict(sorted(self.inputs.items())),
                  "status": status, "result": result}
        text = json.dumps(report, indent=2, sort_keys=True)
        print(text)
        if getattr(self.args, "json_out", None):
            Path(self.args.json_out).write_text(text + "\n")
        return status


# ---------------------------------------------------------------- commands

def cmd_polygon(rep: Reporter) -> int:
    poly = LatticePolygon.from_json(rep.load("polygon", rep.args.polygon))
    return rep.emit({
        "vertices": [list(v) for v in poly.vertices],
        "sides": [{"start": list(s.start), "end": list(s.end), "normal": list(s.normal),
                   "int_length": s.int_length} for s in sides(poly)],
        "double_area": double_area(poly),
        "m": boundary_lattice_count(poly),
        "g": interior_lattice_count(poly),
    })


def _momenta(rep: Reporter, poly):
    from .tropical import MomentaConfig, enumerate_rational, random_generic_momenta
    if rep.args.momenta:
        cfg = MomentaConfig.from_json(rep.load("momenta", rep.args.momenta))
        return cfg, enumerate_rational(poly, cfg)
    return random_generic_momenta(poly, rep.args.seed)


def cmd_bg(rep: Reporter) -> int:
    from .laurent import ZERO
    from .tropical import bg_weight
    poly = LatticePolygon.from_json(rep.load("polygon", rep.args.polygon))
    cfg, curves = _momenta(rep, poly)
    total = ZERO
    for c in curves:
        total = total + bg_weight(c)
    result = {"bg": str(total), "bg_coeffs": total.to_json(), "eval_at_one": eval_at_one(total),
              "n_curves": len(curves), "momenta": cfg.to_json(),
              "symmetric": is_symmetric(total), "nonnegative": has_nonnegative_coefficients(total)}
    if rep.args.curves:
        result["curves"] = [c.to_json() for c in curves]
    ok = result["symmetric"] and result["nonnegative"]
    return rep.emit(result, EXIT_OK if ok else EXIT_FAILED)


def cmd_identity(rep: Reporter) -> int:
    from .laurent import ZERO
    from .tropical import bg_weight, identity_rhs, r_from_curves
    poly = LatticePolygon.from_json(rep.load("polygon", rep.args.polygon))
    cfg, curves = _momenta(rep, poly)
    bg = ZERO
    for c in curves:
        bg = bg + bg_weight(c)
    lhs = r_from_curves(curves)
    rhs = identity_rhs(poly, bg)
    same = lhs == rhs
    return rep.emit({"R": str(lhs), "rhs": str(rhs), "bg": str(bg), "equal": same,
                     "momenta": cfg.to_json()}, EXIT_OK if same else EXIT_FAILED)


def _curve_or_sequence(rep: Reporter):
    data = rep.load("curve", rep.args.curve)
    if isinstance(data, dict) and "boundary_sequence" in data:
        seq = data["boundary_sequence"]
        try:
            return None, diagram_from_boundary_sequence(seq["quadrants"], seq["edges"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad boundary sequence: {exc}") from exc
    return RealRationalCurve.from_json(data), None


def cmd_diagram(rep: Reporter) -> int:
    curve, diag = _curve_or_sequence(rep)
    if diag is None:
        diag = index_diagram(curve)
    result = {"diagram": diag.to_json()}
    if curve is not None:
        result["polygon"] = curve_polygon(curve).to_json()
        result["boundary"] = [b.to_json() for b in boundary_divisor(curve)]
    if rep.args.svg:
        Path(rep.args.svg).write_text(svg.render([svg.diagram_panel(diag)], "index diagram"))
    return rep.emit(result)


def cmd_qindex(rep: Reporter) -> int:
    from .numerics import area_log, snap_half, two_arg_degree, verify_quantization
    curve, diag = _curve_or_sequence(rep)
    method = rep.args.method
    if curve is None:
        if method not in ("diagram", "both"):
            raise InputError("a boundary sequence only supports the diagram method")
        return rep.emit({"k_diagram": str(diagram_area(diag)), "diagram": diag.to_json()})
    result: dict = {"curve": curve.digest()}
    failed = False
    k_diag = None
    if method in ("diagram", "both"):
        try:
            diag = index_diagram(curve)
        except NonRealBoundary:
            if method == "diagram":
                raise
            diag = None  # purely imaginary intersections: numeric only
            result["k_diagram"] = None
        if diag is not None:
            k_diag = diagram_area(diag)
            result["k_diagram"] = str(k_diag)
            result["diagram"] = diag.to_json()
    if method == "numeric":
        area = area_log(curve, tol=rep.args.tol)
        k = snap_half(area.k)
        result.update(area_log=area.value, area_error=area.error, k_numeric=str(k),
                      k_residual=abs(area.k - float(k)))
        failed = abs(area.k - float(k)) > max(rep.args.tol, 1e-4)
    elif method == "both":
        nr = verify_quantization(curve, tol=rep.args.tol)
        result["numeric"] = nr.to_json()
        result["agree"] = nr.ok and (k_diag is None or nr.k_numeric == k_diag)
        failed = not result["agree"]
    elif method == "2arg":
        deg = two_arg_degree(curve, seed=rep.args.seed)
        area = area_log(curve, tol=rep.args.tol)
        k = snap_half(area.k)
        result.update(two_arg_degree=deg, k_numeric=str(k), agree=deg == 2 * k)
        failed = deg != 2 * k
    return rep.emit(result, EXIT_FAILED if failed else EXIT_OK)


def cmd_plot(rep: Reporter) -> int:
    if not rep.args.svg:
        raise InputError("plot needs --svg")
    curve, diag = _curve_or_sequence(rep)
    panels = []
    if curve is not None:
        panels.append(svg.curve_panel(curve))
        try:
            diag = index_diagram(curve)
        except NotToricTypeI:
            diag = None
    if diag is not None:
        panels.append(svg.diagram_panel(diag, x_off=svg.SIZE * len(panels)))
    text = svg.render(panels, "Log image and index diagram" if len(panels) == 2 else "")
    try:
        Path(rep.args.svg).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {rep.args.svg}: {exc}") from exc
    return rep.emit({"svg": rep.args.svg, "panels": len(panels),
                     "sha256": hashlib.sha256(text.encode()).hexdigest()})


def cmd_verify(rep: Reporter) -> int:
    from .checks import run_all
    results = run_all(seed=rep.args.seed, tol=rep.args.tol, quick=rep.args.quick)
    ok = all(r["ok"] for r in results)
    for r in results:
        print(f"{'PASS' if r['ok'] else 'FAIL'}  {r['name']}  ({r['seconds']:.2f}s)", file=sys.stderr)
    # timings go to stderr only, so the report stays byte-stable
    checks = [{k: v for k, v in r.items() if k != "seconds"} for r in results]
    return rep.emit({"checks": checks, "ok": ok}, EXIT_OK if ok else EXIT_FAILED)


COMMANDS = {"polygon": cmd_polygon, "bg": cmd_bg, "identity": cmd_identity, "qindex": cmd_qindex,
            "diagram": cmd_diagram, "plot": cmd_plot, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qindex", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=float, default=1e-6)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json-out")
        sp.add_argument("-v", "--verbose", action="store_true")
        return sp

    common(sub.add_parser("polygon", help="side data, area and lattice counts")) \
        .add_argument("--polygon", required=True)
    for name in ("bg", "identity"):
        sp = common(sub.add_parser(name))
        sp.add_argument("--polygon", required=True)
        sp.add_argument("--momenta")
        if name == "bg":
            sp.add_argument("--curves", action="store_true", help="dump every tropical curve")
    sp = common(sub.add_parser("qindex", help="quantum index of a curve"))
    sp.add_argument("--curve", required=True)
    sp.add_argument("--method", choices=["diagram", "numeric", "both", "2arg"], default="both")
    sp = common(sub.add_parser("diagram", help="index diagram of a curve"))
    sp.add_argument("--curve", required=True)
    sp.add_argument("--svg")
    sp = common(sub.add_parser("plot", help="SVG of the Log image and diagram"))
    sp.add_argument("--curve", required=True)
    sp.add_argument("--svg")
    sp = common(sub.add_parser("verify", help="run the property and acceptance checks"))
    sp.add_argument("--quick", action="store_true", help="skip the degree 3 enumeration")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol <= 0:
        parser.error("--tol must be positive")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    rep = Reporter(args)
    try:
        return COMMANDS[args.command](rep)
    except (InputError, NotToricTypeI) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "step", None) is not None:
            err["step"] = exc.step
        if getattr(exc, "tree_id", None) is not None:
            err["tree_id"] = exc.tree_id
        return rep.emit(err, EXIT_INPUT)
    except NumericFailure as exc:
        return rep.emit({"error": type(exc).__name__, "message": str(exc)}, EXIT_NUMERIC)
    except QIndexError as exc:
        return rep.emit({"error": type(exc).__name__, "message": str(exc)}, EXIT_NUMERIC)


if __name__ == "__main__":
    sys.exit(main())
