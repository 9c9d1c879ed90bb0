import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction
from pathlib import Path

import pytest

from qindex.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_polygon(capsys):
    code, rep = run(capsys, "polygon", "--polygon", DATA / "simplex3.json")
    assert code == 0
    assert rep["result"]["m"] == 9 and rep["result"]["g"] == 1 and rep["result"]["double_area"] == 9
    assert rep["inputs"]["polygon"].startswith("sha256:")
    assert set(rep) == {"tool", "version", "command", "seed", "tol", "inputs", "status", "result"}


def test_polygon_shorthand(capsys):
    code, rep = run(capsys, "polygon", "--polygon", "rect:2,1")
    assert code == 0 and rep["result"]["m"] == 6


@pytest.mark.parametrize("argv", [
    ["polygon", "--polygon", DATA / "nonconvex.json"],
    ["polygon", "--polygon", "nowhere/missing.json"],
    ["polygon", "--polygon", "blob:3"],
])
def test_bad_input_exit_2(capsys, argv):
    code, rep = run(capsys, *argv)
    assert code == 2 and rep["status"] == 2 and "error" in rep["result"]


def test_quartic_reports_step(capsys):
    code, rep = run(capsys, "diagram", "--curve", DATA / "quartic_not_toric.json")
    assert code == 2
    assert rep["result"]["error"] == "NotToricTypeI" and rep["result"]["step"] == 4


def test_bg_and_identity(capsys):
    code, rep = run(capsys, "bg", "--polygon", DATA / "simplex2.json", "--seed", 3)
    assert code == 0 and rep["result"]["eval_at_one"] == 1 and rep["result"]["symmetric"]
    code, rep = run(capsys, "identity", "--polygon", "simplex:2", "--seed", 3)
    assert code == 0 and rep["result"]["equal"]


def test_bg_with_momenta_file(capsys, tmp_path):
    _, rep = run(capsys, "bg", "--polygon", "simplex:1", "--seed", 1)
    f = tmp_path / "mu.json"
    f.write_text(json.dumps(rep["result"]["momenta"]))
    code, rep2 = run(capsys, "bg", "--polygon", "simplex:1", "--momenta", f, "--curves")
    assert code == 0 and rep2["result"]["bg"] == "1" and len(rep2["result"]["curves"]) == 1


def test_qindex_line(capsys):
    code, rep = run(capsys, "qindex", "--curve", DATA / "line.json")
    assert code == 0
    res = rep["result"]
    assert res["k_diagram"] == "1/2" and res["agree"] and res["numeric"]["k_numeric"] == "1/2"


def test_qindex_circle_numeric_only(capsys):
    code, rep = run(capsys, "qindex", "--curve", DATA / "circle_origin.json")
    assert code == 0 and rep["result"]["k_diagram"] is None
    assert abs(Fraction(rep["result"]["numeric"]["k_numeric"])) == 0.5
    code, rep = run(capsys, "qindex", "--curve", DATA / "circle_origin.json", "--method", "diagram")
    assert code == 2 and rep["result"]["error"] == "NonRealBoundary"


def test_qindex_two_arg(capsys):
    code, rep = run(capsys, "qindex", "--curve", DATA / "conic_harnack.json", "--method", "2arg")
    assert code == 0 and rep["result"]["two_arg_degree"] == 4


def test_diagram_and_plot_svg(capsys, tmp_path):
    svg1 = tmp_path / "d.svg"
    code, rep = run(capsys, "diagram", "--curve", DATA / "cubic_acnode.json", "--svg", svg1)
    assert code == 0 and rep["result"]["diagram"]["area"]
    ET.parse(svg1)
    svg2 = tmp_path / "p.svg"
    code, rep = run(capsys, "plot", "--curve", DATA / "line.json", "--svg", svg2)
    assert code == 0 and rep["result"]["panels"] == 2
    root = ET.parse(svg2).getroot()
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 3


def test_plot_needs_svg(capsys):
    code, _ = run(capsys, "plot", "--curve", DATA / "line.json")
    assert code == 2


def test_reports_are_deterministic(capsys, tmp_path):
    out = tmp_path / "r.json"
    argv = ["identity", "--polygon", DATA / "simplex2.json", "--seed", 9, "--json-out", out]
    run(capsys, *argv)
    first = out.read_bytes()
    run(capsys, *argv)
    assert out.read_bytes() == first


def test_console_script_failure_exit():
    # an empty file is not JSON
    proc = subprocess.run([sys.executable, "-m", "qindex.cli", "qindex", "--curve", "/dev/null"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["result"]["error"] == "InputError"


def test_verify_quick_exit_0(capsys):
    code = main(["verify", "--quick"])
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert code == 0 and rep["result"]["ok"]
    assert "PASS" in captured.err and "seconds" not in captured.out


def test_failed_check_exit_1(capsys, monkeypatch):
    import qindex.checks
    monkeypatch.setattr(qindex.checks, "run_all", lambda **kw: [
        {"name": "always fails", "ok": False, "detail": "forced", "seconds": 0.0}])
    code = main(["verify"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 1 and rep["status"] == 1 and not rep["result"]["ok"]
