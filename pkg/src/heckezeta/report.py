"""Figures from scan outputs.  Slope guides read delta from delta.json."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .serialize import read_csv
from .svg import Plot


def _write(path: Path, plot: Plot) -> Path:
    path.write_text(plot.render())
    return path


def emit_report(results: Path) -> list[Path]:
    results = Path(results)
    dj = results / "delta.json"
    if not dj.exists():
        raise ParameterError("delta.json missing from results directory", results=str(results))
    delta = float(json.loads(dj.read_text())["delta"])
    written = []

    for csv in sorted(results.glob("growth_*.csv")):
        head, rows = read_csv(csv)
        t = np.array([float(r[head.index("t")]) for r in rows])
        y = np.array([float(r[head.index("log_abs_Z")]) for r in rows])
        p = Plot(f"log|Z| on Re s = {rows[0][head.index('sigma')] if rows else '?'}", "t", "log|Z|")
        p.add(t, y, "log|Z|")
        if len(t):
            pos = y > 0
            ref = t ** delta
            scale = float(np.max(y[pos] / ref[pos])) if pos.any() else 1.0
            p.add(t, scale * ref, f"C t^delta, delta={delta:.6f}", "dashed")
            refined = t ** delta * np.log(t) ** (2 - delta)
            sc2 = float(np.max(y[pos] / refined[pos])) if pos.any() else 1.0
            p.add(t, sc2 * refined, "C t^delta (log t)^(2-delta)", "dashed")
        written.append(_write(csv.with_suffix(".svg"), p))

    for js in sorted(results.glob("resonances_*.json")):
        doc = json.loads(js.read_text())
        p = Plot("zeros of det(1 - L_s)", "Re s", "Im s")
        zs = doc.get("zeros", [])
        p.add([z["re"] for z in zs], [z["im"] for z in zs], f"{len(zs)} zeros", "points")
        written.append(_write(js.with_suffix(".svg"), p))

    for csv in sorted(results.glob("weyl_*.csv")):
        head, rows = read_csv(csv)
        T = np.array([float(r[0]) for r in rows])
        N = np.array([float(r[1]) for r in rows])
        p = Plot("N(sigma, T)", "T", "N", logx=True, logy=True)
        p.add(T, N, "N(sigma, T)", "points")
        pos = N > 0
        if pos.any():
            c = float(N[pos][-1] / T[pos][-1] ** (1 + delta))
            p.add(T, c * T ** (1 + delta), f"slope 1+delta = {1 + delta:.6f}", "dashed")
        written.append(_write(csv.with_suffix(".svg"), p))

    for csv in sorted(results.glob("area_*.csv")):
        head, rows = read_csv(csv)
        h = np.array([float(r[0]) for r in rows])
        a = np.array([float(r[1]) for r in rows])
        p = Plot("area of the h-neighbourhood", "h", "area", logx=True, logy=True)
        p.add(h, a, "area", "points")
        if len(h):
            c = float(a[-1] / h[-1] ** (2 - delta))
            p.add(h, c * h ** (2 - delta), f"slope 2-delta = {2 - delta:.6f}", "dashed")
        written.append(_write(csv.with_suffix(".svg"), p))
    return written
