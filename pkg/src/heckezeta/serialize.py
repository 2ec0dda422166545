"""Serialization helpers: complex formatting, provenance-stamped CSV/JSON,
flat key = value config files."""

from __future__ import annotations

import csv
import json
import math
import re
from pathlib import Path

SCHEMA_VERSION = 1

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"(?:\s*([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$")


def fmt_real(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def fmt_complex(z: complex) -> str:
    """a+bi with 17 significant digits (round-trips doubles)."""
    z = complex(z)
    im = fmt_real(abs(z.imag)) if not math.isnan(z.imag) else "nan"
    sign = "-" if (z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0)) else "+"
    return f"{fmt_real(z.real)}{sign}{im}i"


def parse_complex(text: str) -> complex:
    """Accepts '2', '2.0+0.5i', '-1e-3-2j', '3i'."""
    t = str(text).strip().replace(" ", "")
    m = _COMPLEX_RE.match(t)
    if m and (m.group(1) or m.group(2)):
        re_part = float(m.group(1)) if m.group(1) else 0.0
        if m.group(2):
            mag = float(m.group(3)) if m.group(3) else 1.0
            return complex(re_part, mag if m.group(2) == "+" else -mag)
        return complex(re_part, 0.0)
    # pure imaginary like '3i'
    if t.endswith(("i", "j")):
        try:
            return complex(0.0, float(t[:-1] or "1"))
        except ValueError:
            pass
    raise ValueError(f"cannot parse complex number {text!r}")


def provenance(command: str, params: dict) -> str:
    items = " ".join(f"{k}={params[k]}" for k in sorted(params))
    return f"# heckezeta {command} {items}".rstrip()


def write_csv(path: Path, header: list, rows, command: str, params: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(provenance(command, params) + "\n")
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        for r in rows:
            wr.writerow([_cell(x) for x in r])


def _cell(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, complex):
        return fmt_complex(x)
    if isinstance(x, float):
        return fmt_real(x)
    return x


def read_csv(path: Path) -> tuple[list, list]:
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[0], rows[1:]


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, complex):
        return fmt_complex(obj)
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else fmt_real(obj)
    if hasattr(obj, "item"):
        return _jsonify(obj.item())
    return obj


def dumps(payload: dict, command: str, params: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "params": params, **payload}
    return json.dumps(_jsonify(doc), sort_keys=True, indent=2) + "\n"


def write_json(path: Path, payload: dict, command: str, params: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload, command, params))


def read_config(path: Path) -> dict:
    """Flat 'key = value' file; '#' starts a comment."""
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{n}: expected key = value")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out
