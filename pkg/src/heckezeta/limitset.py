"""Interval covers of the limit set in (-1, 1), the h-thickening area and a
box-counting dimension estimate.

The limit set is the attractor of the branches gamma_n(x) = -1/(x + n w),
n != 0, on [-a, a].  A cover node is a composition g of branches; its
interval is g([-a, a]).  Refining g replaces it by g(gamma_n([-a, a])) for
|n| <= N together with a single tail piece g([-t_N, t_N]), t_N = 1/(N w - a),
which contains the images of all branches with |n| > N.  N is chosen per node
so the gaps between consecutive branch images inside the tail are at most h;
the tail piece therefore differs from the true thickening only inside those
gaps.  Tail pieces are not refined further.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ResourceLimitError
from .group import check_width, hull_endpoint

DEFAULT_INTERVAL_LIMIT = 10_000_000


@dataclass
class Cover:
    w: float
    h: float
    depth: int
    intervals: np.ndarray            # (n, 2) sorted by left endpoint
    is_tail: np.ndarray              # (n,) bool
    node_depth: np.ndarray           # (n,) int
    max_N: int = 1
    complete: bool = True
    info: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def total_length(self) -> float:
        return float(np.sum(self.intervals[:, 1] - self.intervals[:, 0]))

    def merged(self, pad: float = 0.0) -> np.ndarray:
        return merge_intervals(self.intervals, pad)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["left", "right", "depth", "is_tail"])
        for (l, r), d, t in zip(self.intervals, self.node_depth, self.is_tail):
            wr.writerow([repr(float(l)), repr(float(r)), int(d), int(bool(t))])
        return buf.getvalue()


def merge_intervals(iv: np.ndarray, pad: float = 0.0) -> np.ndarray:
    """Union of [l - pad, r + pad]; returns the original extents of each component."""
    if len(iv) == 0:
        return np.zeros((0, 2))
    iv = iv[np.argsort(iv[:, 0], kind="stable")]
    out = []
    lo, hi = iv[0]
    for l, r in iv[1:]:
        if l - pad <= hi + pad:
            hi = max(hi, r)
        else:
            out.append((lo, hi))
            lo, hi = l, r
    out.append((lo, hi))
    return np.array(out)


def _apply(G: np.ndarray, x: float) -> np.ndarray:
    # G: (n, 4) rows (alpha, beta, gamma, delta)
    return (G[:, 0] * x + G[:, 1]) / (G[:, 2] * x + G[:, 3])


def _image(G: np.ndarray, t: float) -> np.ndarray:
    u, v = _apply(G, -t), _apply(G, t)
    return np.stack([np.minimum(u, v), np.maximum(u, v)], axis=1)


def _branch_cutoff(G: np.ndarray, w: float, a: float, h: float) -> np.ndarray:
    """Smallest N >= 1 with |g'| * gap_N <= h, gap_N the spacing between the
    images of branches N and N+1."""
    # |g'| over [-a, a] is bounded by its value at the endpoints and 0
    dg = np.max(np.stack([1.0 / (G[:, 2] * x + G[:, 3]) ** 2 for x in (-a, 0.0, a)]), axis=0)
    # gap_n <= (w - 2a)/(n w)^2 for n >= 1; solve conservatively, then fix up
    N = np.maximum(1, np.ceil(np.sqrt(dg * (w - 2 * a) / h) / w)).astype(np.int64)
    while True:
        gap = (w - 2 * a) / ((N * w + a) * ((N + 1) * w - a))
        bad = dg * gap > h
        if not bad.any():
            break
        N[bad] += 1
    # decrease while still admissible
    while True:
        M = N - 1
        gap = (w - 2 * a) / ((M * w + a) * ((M + 1) * w - a))
        ok = (M >= 1) & (dg * gap <= h)
        if not ok.any():
            return N
        N[ok] = M[ok]


def refine_cover(w: float, h: float, max_depth: int | None = None,
                 limit: int = DEFAULT_INTERVAL_LIMIT) -> Cover:
    """Cover of the limit set by intervals of length <= h plus tail pieces."""
    w = check_width(w)
    a = hull_endpoint(w)
    h = float(h)
    if not 0 < h < a / 4:
        raise ParameterError("scale h must lie in (0, a/4)", h=h, a=a)
    done_iv, done_tail, done_depth = [], [], []
    G = np.array([[1.0, 0.0, 0.0, 1.0]])
    depth = 0
    max_N = 1
    count = 1
    complete = True
    while len(G):
        iv = _image(G, a)
        long = (iv[:, 1] - iv[:, 0]) > h
        if max_depth is not None and depth >= max_depth:
            long[:] = False
            complete = not ((iv[:, 1] - iv[:, 0]) > h).any()
        done_iv.append(iv[~long])
        done_tail.append(np.zeros((~long).sum(), bool))
        done_depth.append(np.full((~long).sum(), depth))
        G = G[long]
        if not len(G):
            break
        N = _branch_cutoff(G, w, a, h)
        max_N = max(max_N, int(N.max()))
        t = 1.0 / (N * w - a)
        # tail pieces g([-t, t])
        tails = np.stack([np.minimum(*_pair(G, t)), np.maximum(*_pair(G, t))], axis=1)
        done_iv.append(tails)
        done_tail.append(np.ones(len(G), bool))
        done_depth.append(np.full(len(G), depth + 1))
        # children g o gamma_n, n = -N..-1, 1..N
        reps = 2 * N
        count += int(reps.sum()) + len(G)
        if count > limit:
            raise ResourceLimitError("interval budget exceeded", limit=limit, depth=depth,
                                     partial_depth=depth)
        parent = np.repeat(np.arange(len(G)), reps)
        offs = np.concatenate([np.r_[-np.arange(n, 0, -1), np.arange(1, n + 1)] for n in N])
        P = G[parent]
        nw = offs * w
        # G . [[0, -1], [1, n w]]
        G = np.stack([P[:, 1], -P[:, 0] + nw * P[:, 1], P[:, 3], -P[:, 2] + nw * P[:, 3]], axis=1)
        # keep entries bounded
        G /= np.max(np.abs(G), axis=1, keepdims=True)
        depth += 1
    iv = np.concatenate(done_iv)
    tail = np.concatenate(done_tail)
    dep = np.concatenate(done_depth)
    order = np.lexsort((iv[:, 1], iv[:, 0]))
    return Cover(w, h, depth, iv[order], tail[order], dep[order], max_N, complete,
                 {"n_tail": int(tail.sum())})


def _pair(G, t):
    return (G[:, 0] * (-t) + G[:, 1]) / (G[:, 2] * (-t) + G[:, 3]), \
           (G[:, 0] * t + G[:, 1]) / (G[:, 2] * t + G[:, 3])


def omega_area(cover: Cover, h: float) -> float:
    """Area of the union of h-stadiums around the cover intervals.

    Intervals whose h-neighbourhoods overlap are merged first; each merged
    component [l, r] contributes 2 h (r - l) + pi h^2.
    """
    h = float(h)
    if h <= 0:
        raise ParameterError("h must be positive", h=h)
    comp = merge_intervals(cover.intervals, h)
    return float(np.sum(2.0 * h * (comp[:, 1] - comp[:, 0])) + len(comp) * math.pi * h * h)


def box_count(cover: Cover, h: float) -> int:
    """Number of grid cells [k h, (k+1) h) meeting the cover."""
    lo = np.floor(cover.intervals[:, 0] / h).astype(np.int64)
    hi = np.floor(cover.intervals[:, 1] / h).astype(np.int64)
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    total = 0
    cur_lo, cur_hi = lo[0], hi[0]
    for l, r in zip(lo[1:], hi[1:]):
        if l <= cur_hi:
            cur_hi = max(cur_hi, r)
        else:
            total += cur_hi - cur_lo + 1
            cur_lo, cur_hi = l, r
    total += cur_hi - cur_lo + 1
    return int(total)


@dataclass
class BoxCountFit:
    delta_box: float
    intercept: float
    r2: float
    scales: np.ndarray
    counts: np.ndarray


def boxcount_dimension(w: float, scales) -> BoxCountFit:
    """Slope of log(box count at scale h) against log(1/h)."""
    scales = np.sort(np.asarray(scales, dtype=float))[::-1]
    if len(scales) < 4 or scales[0] / scales[-1] < 100:
        raise ParameterError("need >= 4 scales spanning >= 2 decades", n=len(scales))
    counts = np.array([box_count(refine_cover(w, h), h) for h in scales])
    use = counts > 0
    if use.sum() < 3:
        raise ParameterError("fewer than 3 usable scales")
    X = np.log(1.0 / scales[use])
    Y = np.log(counts[use])
    slope, icpt = np.polyfit(X, Y, 1)
    resid = Y - (slope * X + icpt)
    ss = float(np.sum((Y - Y.mean()) ** 2))
    return BoxCountFit(float(slope), float(icpt), 1 - float(np.sum(resid ** 2)) / ss if ss else 1.0,
                       scales, counts)


def area_scaling(w: float, scales) -> tuple[float, np.ndarray]:
    """Log-log slope of omega_area against h; returns (slope, areas)."""
    scales = np.asarray(scales, dtype=float)
    areas = np.array([omega_area(refine_cover(w, h), h) for h in scales])
    slope = float(np.polyfit(np.log(scales), np.log(areas), 1)[0])
    return slope, areas
