"""Append-only JSON-lines cache of determinant values."""

from __future__ import annotations

import json
import logging
import os
import random
from pathlib import Path

log = logging.getLogger(__name__)

CACHE_VERSION = 1
ENV_VAR = "HECKE_CACHE"


def cache_key(w: float, rep_key: str, s: complex, M: int, R: float) -> str:
    s = complex(s)
    return f"{float(w)!r}|{rep_key}|{round(s.real, 12)!r}|{round(s.imag, 12)!r}|{int(M)}|{float(R)!r}"


class DetCache:
    """Maps cache_key -> complex det.  Malformed lines are skipped on load."""

    def __init__(self, path: str | os.PathLike | None = None, audit_rate: float = 0.01, seed: int = 0):
        path = path or os.environ.get(ENV_VAR)
        self.path = Path(path) if path else None
        self.audit_rate = audit_rate
        self._rng = random.Random(seed)
        self._index: dict[str, complex] = {}
        self.skipped = 0
        if self.path and self.path.exists():
            self._load()

    def _load(self):
        with open(self.path) as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                    if rec.get("version") != CACHE_VERSION:
                        continue
                    self._index[rec["key"]] = complex(rec["re"], rec["im"])
                except (ValueError, KeyError, TypeError):
                    self.skipped += 1
        if self.skipped:
            log.warning("skipped %d malformed cache lines", self.skipped)

    def __len__(self):
        return len(self._index)

    def get(self, key: str):
        return self._index.get(key)

    def put(self, key: str, value: complex) -> None:
        value = complex(value)
        self._index[key] = value
        if self.path:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                fh.write(json.dumps({"version": CACHE_VERSION, "key": key,
                                     "re": value.real, "im": value.imag}) + "\n")

    def lookup(self, key: str, compute):
        """Cached value, recomputed (and compared to 1e-12) on a random audit."""
        hit = self.get(key)
        if hit is None:
            val = compute()
            self.put(key, val)
            return val
        if self._rng.random() < self.audit_rate:
            val = compute()
            if abs(val - hit) > 1e-12 * max(1.0, abs(val)):
                log.error("cache audit mismatch for %s: %r vs %r", key, hit, val)
                self.put(key, val)
                return val
        return hit
