"""Plain SVG figures: the Log image of the real locus and index diagrams."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .rational_curves import IndexDiagram, RealRationalCurve, boundary_divisor

SIZE = 360
PAD = 24


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Frame:
    """Maps a square data window onto an SVG panel (y grows upwards)."""

    def __init__(self, lo, hi, x_off=0.0):
        self.lo, self.hi, self.x_off = lo, hi, x_off
        self.scale = (SIZE - 2 * PAD) / (hi - lo)

    def __call__(self, u, v):
        return (self.x_off + PAD + (u - self.lo) * self.scale,
                SIZE - PAD - (v - self.lo) * self.scale)


def _arcs_in_theta(curve: RealRationalCurve, n: int = 4000):
    """Pieces of the real parameter circle in the chart t = tan(θ/2)."""
    cuts = sorted(2 * math.atan(b.param.value) for b in boundary_divisor(curve) if b.kind == "real")
    if any(b.kind == "infinity" for b in boundary_divisor(curve)):
        cuts.append(math.pi)
    if not cuts:
        return [np.linspace(-math.pi, math.pi, n)]
    pieces = []
    ext = cuts + [cuts[0] + 2 * math.pi]
    for a, b in zip(ext, ext[1:]):
        k = max(16, int(n * (b - a) / (2 * math.pi)))
        # stay off the endpoints, where log|x| or log|y| diverges
        s = np.linspace(0, 1, k + 2)[1:-1]
        pieces.append(a + (b - a) * (0.5 - 0.5 * np.cos(math.pi * s)))
    return pieces


def log_image_paths(curve: RealRationalCurve, window: float = 6.0):
    """Polylines of (log|x|, log|y|), oriented, clipped to the window."""
    out = []
    for th in _arcs_in_theta(curve):
        if curve.orientation == -1:
            th = th[::-1]
        t = np.tan(th / 2)
        with np.errstate(divide="ignore", invalid="ignore"):
            u, v = curve.log_point(t)
        inside = np.isfinite(u) & np.isfinite(v) & (np.abs(u) <= window) & (np.abs(v) <= window)
        run = []
        for ok, a, b in zip(inside, u, v):
            if ok:
                run.append((float(a), float(b)))
            elif len(run) > 1:
                out.append(run)
                run = []
            else:
                run = []
        if len(run) > 1:
            out.append(run)
    return out


def _arrow(p, q, size=7.0) -> str:
    ang = math.atan2(q[1] - p[1], q[0] - p[0])
    tip = q
    left = (tip[0] - size * math.cos(ang - 0.45), tip[1] - size * math.sin(ang - 0.45))
    right = (tip[0] - size * math.cos(ang + 0.45), tip[1] - size * math.sin(ang + 0.45))
    return (f'<polygon points="{_fmt(tip[0])},{_fmt(tip[1])} {_fmt(left[0])},{_fmt(left[1])} '
            f'{_fmt(right[0])},{_fmt(right[1])}" fill="#b03030"/>')


def _axes(frame, lo, hi) -> list[str]:
    a0, b0 = frame(lo, 0)
    a1, b1 = frame(hi, 0)
    c0, d0 = frame(0, lo)
    c1, d1 = frame(0, hi)
    return [f'<line x1="{_fmt(a0)}" y1="{_fmt(b0)}" x2="{_fmt(a1)}" y2="{_fmt(b1)}" stroke="#999"/>',
            f'<line x1="{_fmt(c0)}" y1="{_fmt(d0)}" x2="{_fmt(c1)}" y2="{_fmt(d1)}" stroke="#999"/>']


def curve_panel(curve: RealRationalCurve, x_off: float = 0.0, window: float = 6.0) -> list[str]:
    frame = _Frame(-window, window, x_off)
    parts = _axes(frame, -window, window)
    for path in log_image_paths(curve, window):
        pts = [frame(*p) for p in path]
        parts.append('<polyline fill="none" stroke="#1f4e9a" stroke-width="1.5" points="'
                     + " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts) + '"/>')
        mid = len(pts) // 2
        if mid + 1 < len(pts) and pts[mid] != pts[mid + 1]:
            parts.append(_arrow(pts[mid], pts[mid + 1]))
    return parts


def diagram_panel(diag: IndexDiagram, x_off: float = 0.0) -> list[str]:
    vs = diag.vertices
    lo = min(min(v.a for v in vs), min(v.b for v in vs)) - 1
    hi = max(max(v.a for v in vs), max(v.b for v in vs)) + 1
    frame = _Frame(lo, hi, x_off)
    parts = []
    for i in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            x, y = frame(i, j)
            parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="1.5" fill="#aaa"/>')
    parts += _axes(frame, lo, hi)
    n = len(vs)
    for i in range(n):
        p, q = frame(*vs[i]), frame(*vs[(i + 1) % n])
        parts.append(f'<line x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" x2="{_fmt(q[0])}" '
                     f'y2="{_fmt(q[1])}" stroke="#1f4e9a" stroke-width="2"/>')
        if p != q:
            parts.append(_arrow(p, ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)))
    for v in vs:
        x, y = frame(*v)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#1f4e9a"/>')
    return parts


def render(panels: list[list[str]], title: str = "") -> str:
    width = SIZE * max(1, len(panels))
    body = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{SIZE + 20}" '
            f'viewBox="0 0 {width} {SIZE + 20}">',
            f'<rect width="{width}" height="{SIZE + 20}" fill="white"/>']
    if title:
        body.append(f'<text x="{PAD}" y="{SIZE + 12}" font-family="sans-serif" font-size="12">'
                    f'{escape(title)}</text>')
    for p in panels:
        body += p
    body.append("</svg>")
    return "\n".join(body) + "\n"
