"""Minimal deterministic SVG plots (lines, markers, text)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

W, H = 640, 420
ML, MR, MT, MB = 70, 20, 40, 50
COLORS = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e"]


def _f(x: float) -> str:
    return f"{x:.2f}"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


@dataclass
class Series:
    x: list
    y: list
    label: str
    style: str = "line"        # line | dashed | points


@dataclass
class Plot:
    title: str
    xlabel: str
    ylabel: str
    logx: bool = False
    logy: bool = False
    series: list = field(default_factory=list)

    def add(self, x, y, label, style="line"):
        self.series.append(Series([float(v) for v in x], [float(v) for v in y], label, style))

    def _tx(self, v, lo, hi, log_):
        if log_:
            v, lo, hi = math.log10(v), math.log10(lo), math.log10(hi)
        return (v - lo) / (hi - lo) if hi > lo else 0.5

    def render(self) -> str:
        pts = [(x, y) for s in self.series for x, y in zip(s.x, s.y)
               if math.isfinite(x) and math.isfinite(y)
               and (not self.logx or x > 0) and (not self.logy or y > 0)]
        if pts:
            xs, ys = zip(*pts)
            x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        else:
            x0, x1, y0, y1 = (1.0, 10.0, 1.0, 10.0) if (self.logx or self.logy) else (0.0, 1.0, 0.0, 1.0)
        if x0 == x1:
            x0, x1 = (x0 / 2, x0 * 2) if self.logx else (x0 - 1, x1 + 1)
        if y0 == y1:
            y0, y1 = (y0 / 2, y0 * 2) if self.logy else (y0 - 1, y1 + 1)
        pw, ph = W - ML - MR, H - MT - MB

        def X(v):
            return ML + pw * self._tx(v, x0, x1, self.logx)

        def Y(v):
            return MT + ph * (1 - self._tx(v, y0, y1, self.logy))

        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
               f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
               f'<text x="{W // 2}" y="22" text-anchor="middle" font-family="sans-serif" font-size="15">{_esc(self.title)}</text>',
               f'<line x1="{ML}" y1="{MT + ph}" x2="{ML + pw}" y2="{MT + ph}" stroke="black"/>',
               f'<line x1="{ML}" y1="{MT}" x2="{ML}" y2="{MT + ph}" stroke="black"/>',
               f'<text x="{ML + pw // 2}" y="{H - 10}" text-anchor="middle" font-family="sans-serif" font-size="12">{_esc(self.xlabel)}</text>',
               f'<text x="16" y="{MT + ph // 2}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {MT + ph // 2})">{_esc(self.ylabel)}</text>']
        for v, anchor, xx, yy in ((x0, "start", ML, MT + ph + 16), (x1, "end", ML + pw, MT + ph + 16)):
            out.append(f'<text x="{xx}" y="{yy}" text-anchor="{anchor}" font-family="sans-serif" font-size="10">{v:.4g}</text>')
        for v, yy in ((y0, MT + ph), (y1, MT + 10)):
            out.append(f'<text x="{ML - 4}" y="{yy}" text-anchor="end" font-family="sans-serif" font-size="10">{v:.4g}</text>')
        for i, s in enumerate(self.series):
            c = COLORS[i % len(COLORS)]
            good = [(x, y) for x, y in zip(s.x, s.y) if math.isfinite(x) and math.isfinite(y)
                    and (not self.logx or x > 0) and (not self.logy or y > 0)]
            if s.style == "points":
                for x, y in good:
                    out.append(f'<circle cx="{_f(X(x))}" cy="{_f(Y(y))}" r="2.5" fill="{c}"/>')
            elif good:
                d = " ".join(("M" if j == 0 else "L") + f"{_f(X(x))},{_f(Y(y))}" for j, (x, y) in enumerate(good))
                dash = ' stroke-dasharray="6,4"' if s.style == "dashed" else ""
                out.append(f'<path d="{d}" fill="none" stroke="{c}" stroke-width="1.5"{dash}/>')
            out.append(f'<text x="{ML + 10}" y="{MT + 14 + 14 * i}" font-family="sans-serif" font-size="11" fill="{c}">{_esc(s.label)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"
