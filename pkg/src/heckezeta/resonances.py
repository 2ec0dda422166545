"""Zeros of det(1 - L_{s,rho}): the dimension delta_w, argument-principle
counts in boxes, refined zero lists and the Weyl-type counting functions."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, ContourError, ParameterError, PoleError
from .group import UnitaryRep, check_width, trivial_rep
from .transfer import DiscretizationParams, build_closed, lu_logdet
from .zeta import ZetaQuery, default_M

log = logging.getLogger(__name__)

DELTA_BRACKET = (0.5001, 0.9999)


def leading_eigenvalue(s: float, params: DiscretizationParams) -> float:
    ev = np.linalg.eigvals(build_closed(complex(s), params, basis="raw").A)
    return float(ev[np.argmax(ev.real)].real)


_delta_cache: dict = {}


def compute_delta(w: float, tol: float = 1e-12, M: int = 40, check_stability: bool = True) -> float:
    """Hausdorff dimension of the limit set: the s in (1/2, 1) where the
    leading eigenvalue of L_s (trivial rep) equals 1."""
    w = check_width(w)
    if tol < 1e-12:
        raise ParameterError("tol must be >= 1e-12", tol=tol)
    key = (w, tol, M, check_stability)
    if key in _delta_cache:
        return _delta_cache[key]

    def root(MM):
        p = DiscretizationParams(w=w, M=MM)
        f = lambda s: leading_eigenvalue(s, p) - 1.0
        lo, hi = DELTA_BRACKET
        flo, fhi = f(lo), f(hi)
        if not (flo > 0 > fhi):
            raise BracketError("leading eigenvalue does not cross 1 in the bracket",
                               w=w, f_lo=flo, f_hi=fhi)
        return brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)

    d = root(M)
    if check_stability:
        d2 = root(M + 20)
        if abs(d2 - d) > 10 * max(tol, 1e-13):
            log.warning("delta moved by %.2e under M -> M+20; using the larger M", abs(d2 - d))
            d = d2
    _delta_cache[key] = float(d)
    return float(d)


# -- argument principle ------------------------------------------------------

def _det_fn(w: float, rep: UnitaryRep, M: int | None, R: float | None, t_max: float):
    # one truncation for the whole region so the sampled function is analytic
    p = DiscretizationParams(w=w, M=M if M is not None else default_M(t_max + 1.0), R=R, rep=rep)
    eye = np.eye(p.size)
    cache = {}

    def f(s: complex) -> complex:
        s = complex(s)
        if s not in cache:
            cache[s] = lu_logdet(eye - build_closed(s, p).A)
        return cache[s]
    return f


def _segment_winding(logdet, a: complex, b: complex, n0: int = 16, max_depth: int = 14,
                     eps: float = 1e-300) -> float:
    """Change of arg det along [a, b] with adaptive bisection of any step > pi/2."""
    total = 0.0
    stack = [(0.0, 1.0, 0)]
    pts = np.linspace(0.0, 1.0, n0 + 1)
    stack = [(pts[i], pts[i + 1], 0) for i in range(n0)][::-1]
    while stack:
        u, v, depth = stack.pop()
        za, zb = a + (b - a) * u, a + (b - a) * v
        la, lb = logdet(za), logdet(zb)
        if la.real == -np.inf or lb.real == -np.inf:
            raise ContourError("determinant vanishes on the contour", at=complex(za))
        dphi = (lb.imag - la.imag + math.pi) % (2 * math.pi) - math.pi
        if abs(dphi) < 0.5 * math.pi:
            total += dphi
        elif depth >= max_depth:
            raise ContourError("phase step stays above pi/2 after maximal refinement",
                               segment=[complex(za), complex(zb)])
        else:
            m = 0.5 * (u + v)
            stack.append((m, v, depth + 1))
            stack.append((u, m, depth + 1))
    return total


def _near_zero(logdet, z: complex, scale: float = 1e-4) -> bool:
    # |det| tiny relative to its neighbourhood on a 1e-4 circle
    ring = [logdet(z + scale * np.exp(2j * math.pi * k / 4)).real for k in range(4)]
    return logdet(z).real < min(ring) - 2.0


def count_zeros_box(w: float, rep: UnitaryRep, box, M: int | None = None, R: float | None = None,
                    n0: int = 16, nudge: float = 1e-3, logdet=None) -> int:
    """Winding number of det(1 - A(s)) around the rectangle
    [sig_min, sig_max] x [t_min, t_max] (counter-clockwise)."""
    smin, smax, tmin, tmax = map(float, box)
    if not (smin < smax and tmin < tmax):
        raise ParameterError("degenerate box", box=box)
    if not tmin > 0:
        raise ParameterError("t_min must be positive", t_min=tmin)
    f = logdet or _det_fn(w, rep, M, R, tmax)
    for attempt in range(4):
        corners = [complex(smin, tmin), complex(smax, tmin), complex(smax, tmax), complex(smin, tmax)]
        try:
            wind = 0.0
            for i in range(4):
                a, b = corners[i], corners[(i + 1) % 4]
                n = max(n0, int(n0 * abs(b - a)))
                wind += _segment_winding(f, a, b, n0=n)
            return int(round(wind / (2 * math.pi)))
        except (ContourError, PoleError) as exc:
            if attempt == 3:
                raise
            log.info("nudging box edges after %s", exc)
            smin -= nudge; smax += nudge; tmin = max(tmin - nudge, 0.5 * tmin); tmax += nudge
    raise ContourError("unreachable")


# -- refinement --------------------------------------------------------------

@dataclass
class Resonance:
    s: complex
    multiplicity: int
    residual: float
    iterations: int

    def to_dict(self) -> dict:
        return {"re": self.s.real, "im": self.s.imag, "multiplicity": self.multiplicity,
                "residual": self.residual, "iterations": self.iterations}


def _exp(l: complex) -> complex:
    return complex(np.exp(l)) if l.real > -np.inf else 0j


def _newton(f, z: complex, mult: int = 1, h: float = 1e-5, tol: float = 1e-13, maxit: int = 50):
    """Newton on det with a central-difference derivative; step = mult det / det'."""
    last = math.inf
    for it in range(1, maxit + 1):
        d0 = _exp(f(z))
        if d0 == 0:
            return z, it
        dd = (_exp(f(z + h)) - _exp(f(z - h))) / (2 * h)
        if dd == 0:
            return z, it
        step = -mult * d0 / dd
        if abs(step) > 0.5:
            step *= 0.5 / abs(step)
        z = z + step
        if abs(step) < tol * max(1.0, abs(z)) or abs(step) >= last and abs(step) < 1e-9:
            return z, it
        last = abs(step)
    return z, maxit


def local_residual(f, z: complex, r: float = 1e-4) -> float:
    """|det(z)| relative to max |det| on the circle of radius r around z."""
    ring = max(abs(_exp(f(z + r * np.exp(2j * math.pi * k / 8)))) for k in range(8))
    return abs(_exp(f(z))) / ring if ring > 0 else 0.0


def find_zeros(w: float, rep: UnitaryRep, box, M: int | None = None, R: float | None = None,
               min_size: float = 0.05, max_cells: int = 4096) -> tuple[list, list]:
    """Zeros in a box by recursive subdivision and Newton refinement.

    Returns (resonances, cells) where cells lists (box, count) for every leaf
    whose count was resolved to a single zero location.
    """
    f = _det_fn(w, rep, M, R, float(box[3]))
    out: list[Resonance] = []
    cells: list = []
    queue = [tuple(map(float, box))]
    n_cells = 0
    while queue:
        b = queue.pop()
        n_cells += 1
        if n_cells > max_cells:
            raise ContourError("too many subdivision cells", box=list(box))
        c = count_zeros_box(w, rep, b, logdet=f)
        if c == 0:
            continue
        smin, smax, tmin, tmax = b
        wdt, hgt = smax - smin, tmax - tmin
        if c == 1 or max(wdt, hgt) < min_size:
            z0 = complex(0.5 * (smin + smax), 0.5 * (tmin + tmax))
            z, it = _newton(f, z0, mult=c if max(wdt, hgt) < min_size else 1)
            inside = smin - 1e-3 <= z.real <= smax + 1e-3 and tmin - 1e-3 <= z.imag <= tmax + 1e-3
            if c == 1 and not inside and max(wdt, hgt) >= min_size:
                _split(b, queue)
                n_cells -= 0
                continue
            r = 1e-4
            mult = count_zeros_box(w, rep, (z.real - r, z.real + r, max(z.imag - r, 1e-9), z.imag + r),
                                   logdet=f)
            res = local_residual(f, z)
            out.append(Resonance(z, max(mult, 1) if c > 1 else 1, res, it))
            cells.append((b, c))
            continue
        _split(b, queue)
    out.sort(key=lambda r: (r.s.imag, r.s.real))
    return out, cells


def _split(b, queue):
    smin, smax, tmin, tmax = b
    if (smax - smin) >= (tmax - tmin):
        m = 0.5 * (smin + smax)
        queue.append((smin, m, tmin, tmax))
        queue.append((m, smax, tmin, tmax))
    else:
        m = 0.5 * (tmin + tmax)
        queue.append((smin, smax, tmin, m))
        queue.append((smin, smax, m, tmax))


# -- counting ----------------------------------------------------------------

@dataclass
class CountingReport:
    sigma: float
    T: np.ndarray
    N: np.ndarray
    window_counts: np.ndarray
    eta: float
    delta: float
    bands: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"sigma": self.sigma, "T": [float(x) for x in self.T], "N": [int(x) for x in self.N],
                "M": [int(x) for x in self.window_counts], "eta_hat": self.eta, "delta": self.delta,
                "one_plus_delta": 1.0 + self.delta}


def weyl_count(w: float, rep: UnitaryRep, sigma: float, T_grid, sigma_max: float = 2.0,
               t_floor: float = 0.1, M: int | None = None, R: float | None = None) -> CountingReport:
    """N(sigma, T) = #zeros with sigma <= Re s <= sigma_max, |Im s| <= T (t >= t_floor
    half, doubled when rho is self-conjugate) and window counts M(sigma, T) =
    #zeros with |Im s - T| <= 1.

    Counts come from unit-height bands, each counted once; N is their
    cumulative sum so it is nondecreasing by construction of the count.
    """
    T = np.asarray(sorted(set(float(x) for x in T_grid)))
    if T.size == 0 or T[0] <= t_floor:
        raise ParameterError("T grid must exceed t_floor", t_floor=t_floor)
    f = _det_fn(w, rep, M, R, float(max(T_grid)) + 1.0)
    edges = sorted(set([t_floor] + list(T) + [x + 1.0 for x in T] + [max(t_floor, x - 1.0) for x in T]))
    band_counts = {}
    for lo, hi in zip(edges[:-1], edges[1:]):
        band_counts[(lo, hi)] = count_zeros_box(w, rep, (sigma, sigma_max, lo, hi), logdet=f)
    factor = 2 if rep.is_self_conjugate else 1

    def upto(x):
        return sum(c for (lo, hi), c in band_counts.items() if hi <= x + 1e-12)

    def between(a, b):
        return sum(c for (lo, hi), c in band_counts.items() if lo >= a - 1e-12 and hi <= b + 1e-12)

    N = np.array([factor * upto(x) for x in T])
    Mw = np.array([between(max(t_floor, x - 1.0), x + 1.0) for x in T])
    half = T >= T[len(T) // 2]
    sel = half & (N > 0)
    eta = float(np.polyfit(np.log(T[sel]), np.log(N[sel]), 1)[0]) if sel.sum() >= 2 else float("nan")
    from .resonances import compute_delta as _cd
    return CountingReport(float(sigma), T, N, Mw, eta, _cd(w),
                          [(lo, hi, c) for (lo, hi), c in sorted(band_counts.items())])
