"""CSV / JSON / SVG emitters for the tables and figures."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import QcSeries, format_rational
from .geometry import BoundarySample, GammaCurvePoint
from .toeplitz import RootBracket, rho

__all__ = [
    "Table1Row",
    "table1_rows",
    "table1_csv",
    "trace_csv",
    "bounds_csv",
    "coeffs_json",
    "bracket_json",
    "dumps_json",
    "emit_svg",
    "fmt8",
]


def fmt8(x: float) -> str:
    """Fixed 8-decimal formatting used for every float in CSV output."""
    s = f"{x:.8f}"
    return "0.00000000" if s == "-0.00000000" else s


@dataclass(frozen=True)
class Table1Row:
    n: int
    bracket: RootBracket

    @property
    def rho(self) -> float:
        return float(self.bracket.mid)

    @property
    def gamma(self) -> float:
        return math.pi * self.rho / 4


def table1_rows(ns: Iterable[int], tol=Fraction(1, 10**8)) -> list[Table1Row]:
    return [Table1Row(n, rho(n, tol)) for n in ns]


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def table1_csv(rows: Sequence[Table1Row]) -> str:
    """n,rho_n,gamma_n,delta_gamma_n with delta_gamma_n = gamma_n - gamma_prev.

    The difference is taken between the printed (rounded) gamma values of
    consecutive rows so the file is internally consistent; it is empty for
    the first row or when the previous row is not n - 1.
    """
    out = []
    prev: Table1Row | None = None
    for r in rows:
        g = fmt8(r.gamma)
        if prev is not None and prev.n == r.n - 1:
            d = fmt8(float(Fraction(g) - Fraction(fmt8(prev.gamma))))
        else:
            d = ""
        out.append([str(r.n), fmt8(r.rho), g, d])
        prev = r
    return _csv_text(["n", "rho_n", "gamma_n", "delta_gamma_n"], out)


def trace_csv(samples: Sequence[BoundarySample]) -> str:
    rows = []
    for s in samples:
        q = s.q
        rows.append([fmt8(s.theta), fmt8(s.R), fmt8(s.Theta), fmt8(s.beta),
                     fmt8(q.real), fmt8(q.imag)])
    return _csv_text(["theta", "R", "Theta", "beta", "re", "im"], rows)


def bounds_csv(points: Sequence[GammaCurvePoint]) -> str:
    rows = [[fmt8(p.alpha), fmt8(p.lower), fmt8(p.gamma), fmt8(p.upper)] for p in points]
    return _csv_text(["alpha", "lower", "gamma", "upper"], rows)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def coeffs_json(series: QcSeries) -> str:
    return dumps_json({"n_max": series.n_max, "coeffs": series.to_json()})


def bracket_json(b: RootBracket) -> dict:
    return {"n": b.n, "lo": format_rational(b.lo), "hi": format_rational(b.hi)}


# --- SVG -------------------------------------------------------------------

_W, _H, _PAD = 640, 480, 56
_STYLES = {
    "solid": "",
    "dashed": ' stroke-dasharray="8,5"',
    "dotted": ' stroke-dasharray="2,4"',
}


def _nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


class _Canvas:
    def __init__(self, xs: Sequence[float], ys: Sequence[float], equal_aspect: bool = False):
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        if x1 == x0:
            x0, x1 = x0 - 1, x1 + 1
        if y1 == y0:
            y0, y1 = y0 - 1, y1 + 1
        mx, my = 0.05 * (x1 - x0), 0.05 * (y1 - y0)
        x0, x1, y0, y1 = x0 - mx, x1 + mx, y0 - my, y1 + my
        if equal_aspect:
            sx = (_W - 2 * _PAD) / (x1 - x0)
            sy = (_H - 2 * _PAD) / (y1 - y0)
            s = min(sx, sy)
            cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
            hx, hy = 0.5 * (_W - 2 * _PAD) / s, 0.5 * (_H - 2 * _PAD) / s
            x0, x1, y0, y1 = cx - hx, cx + hx, cy - hy, cy + hy
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0, y1
        self.parts: list[str] = []

    def px(self, x: float) -> float:
        return _PAD + (x - self.x0) / (self.x1 - self.x0) * (_W - 2 * _PAD)

    def py(self, y: float) -> float:
        return _H - _PAD - (y - self.y0) / (self.y1 - self.y0) * (_H - 2 * _PAD)

    def axes(self, xlabel: str, ylabel: str) -> None:
        p = self.parts
        p.append(f'<rect x="{_PAD}" y="{_PAD}" width="{_W - 2 * _PAD}" '
                 f'height="{_H - 2 * _PAD}" fill="none" stroke="#888"/>')
        for t in _nice_ticks(self.x0, self.x1):
            x = self.px(t)
            p.append(f'<line x1="{x:.2f}" y1="{_H - _PAD}" x2="{x:.2f}" y2="{_H - _PAD + 5}" stroke="#888"/>')
            p.append(f'<text x="{x:.2f}" y="{_H - _PAD + 18}" text-anchor="middle">{t:g}</text>')
        for t in _nice_ticks(self.y0, self.y1):
            y = self.py(t)
            p.append(f'<line x1="{_PAD - 5}" y1="{y:.2f}" x2="{_PAD}" y2="{y:.2f}" stroke="#888"/>')
            p.append(f'<text x="{_PAD - 8}" y="{y + 4:.2f}" text-anchor="end">{t:g}</text>')
        if self.y0 < 0 < self.y1:
            y = self.py(0)
            p.append(f'<line class="axis" x1="{_PAD}" y1="{y:.2f}" x2="{_W - _PAD}" y2="{y:.2f}" stroke="#bbb"/>')
        if self.x0 < 0 < self.x1:
            x = self.px(0)
            p.append(f'<line class="axis" x1="{x:.2f}" y1="{_PAD}" x2="{x:.2f}" y2="{_H - _PAD}" stroke="#bbb"/>')
        p.append(f'<text x="{_W / 2}" y="{_H - 12}" text-anchor="middle">{xlabel}</text>')
        p.append(f'<text x="16" y="{_H / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {_H / 2})">{ylabel}</text>')

    def polyline(self, xs, ys, style: str = "solid", closed: bool = False, label: str = "") -> None:
        pts = " ".join(f"{self.px(x):.2f},{self.py(y):.2f}" for x, y in zip(xs, ys))
        tag = "polygon" if closed else "polyline"
        cls = f' class="{label}"' if label else ""
        self.parts.append(f'<{tag}{cls} points="{pts}" fill="none" stroke="#000" '
                          f'stroke-width="1.5"{_STYLES[style]}/>')

    def render(self, title: str) -> str:
        body = "\n".join(self.parts)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
            f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">\n'
            f"<title>{title}</title>\n"
            f'<rect width="{_W}" height="{_H}" fill="#fff"/>\n'
            f"{body}\n</svg>\n"
        )


def emit_svg(data: Sequence, kind: str) -> str:
    """Standalone SVG for one of the figure kinds.

    ``boundary``: BoundarySample list for the upper arc; the lower arc is
    added by reflection and the curve is closed.
    ``F-graph``: (c, Re F(c)) pairs.
    ``gamma-curves``: GammaCurvePoint list, drawn as gamma (solid), the lower
    bound (dashed) and the upper bound (dotted).
    """
    if not data:
        raise ValueError("cannot plot an empty sample list")
    if kind == "boundary":
        up = [s.q for s in data]
        # q_c(1) and q_c(-1) are approached by the ends of the upper arc
        loop = up + [z.conjugate() for z in reversed(up)]
        xs = [z.real for z in loop]
        ys = [z.imag for z in loop]
        cv = _Canvas(xs, ys, equal_aspect=True)
        cv.axes("Re q", "Im q")
        cv.polyline(xs, ys, closed=True, label="boundary")
        return cv.render("Boundary of q_c(D)")
    if kind == "F-graph":
        xs = [float(p[0]) for p in data]
        ys = [float(p[1]) for p in data]
        cv = _Canvas(xs, ys + [0.0])
        cv.axes("c", "Re F(c)")
        cv.polyline(xs, ys, label="ReF")
        return cv.render("Re F(c)")
    if kind == "gamma-curves":
        al = [p.alpha for p in data]
        cv = _Canvas([0.0] + al, [0.0] + [p.upper for p in data] + [p.lower for p in data])
        cv.axes("alpha", "gamma")
        cv.polyline(al, [p.gamma for p in data], "solid", label="gamma")
        cv.polyline(al, [p.lower for p in data], "dashed", label="lower")
        cv.polyline(al, [p.upper for p in data], "dotted", label="upper")
        return cv.render("gamma(SS_alpha) with bounds")
    raise ValueError(f"unknown figure kind {kind!r}")
