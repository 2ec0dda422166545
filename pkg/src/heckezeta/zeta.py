"""Twisted Selberg zeta function Z(s, rho) = det(1 - L_{s,rho}).

Evaluation goes through the transfer matrix; the Euler product over
primitive classes and the index-2 factorization serve as independent checks.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, PoleError, RegimeError
from .group import (UnitaryRep, check_width, enumerate_primitive_classes, evaluate_rep,
                    index2_summands, induce_from_index2, trivial_rep)
from .specfun import dyadic_window_fit
from .transfer import (DiscretizationParams, build_closed, fredholm_det_mp, lu_logdet)

log = logging.getLogger(__name__)

M_STEP = 20
M_CAP = 400
CONV_TOL = 1e-8
# above this entry size double precision loses too many digits
DOUBLE_ENTRY_LIMIT = 1e4


def default_M(t: float) -> int:
    """Starting truncation for |Im s| = t.

    The nominal sqrt-law start is kept for small t; for t beyond ~30 the
    entries only start to decay past degree ~t, so the linear term wins.
    """
    t = abs(t)
    return int(max(40, math.ceil(6.0 * math.sqrt(t)) + 40, math.ceil(1.1 * t) + 20))


@dataclass(frozen=True)
class ZetaQuery:
    w: float
    s: complex
    rep: UnitaryRep = field(default_factory=trivial_rep)
    M: int | None = None
    R: float | None = None
    backend: str = "auto"

    def __post_init__(self):
        object.__setattr__(self, "w", check_width(self.w))
        object.__setattr__(self, "s", complex(self.s))
        if self.backend not in ("auto", "double", "mp"):
            raise ParameterError("backend must be auto, double or mp", backend=self.backend)

    def params(self, M: int | None = None) -> DiscretizationParams:
        M = M if M is not None else (self.M if self.M is not None else default_M(self.s.imag))
        return DiscretizationParams(w=self.w, M=M, R=self.R, rep=self.rep)


@dataclass
class ZetaResult:
    s: complex
    log_value: complex      # log Z, imaginary part only defined mod 2 pi
    M_used: int
    converged: bool
    backend: str
    change: float           # |Z(M) - Z(M+20)| / max(1, |Z|)

    @property
    def value(self) -> complex:
        return complex(np.exp(self.log_value)) if self.log_value.real > -np.inf else 0j

    @property
    def log_abs(self) -> float:
        return float(self.log_value.real)


def _logdet(s: complex, p: DiscretizationParams, backend: str) -> tuple[complex, str]:
    if backend in ("auto", "double"):
        tm = build_closed(s, p)
        if backend == "double" or np.max(np.abs(tm.A)) < DOUBLE_ENTRY_LIMIT:
            return tm.log_det_one_minus(), "double"
    d, _ = fredholm_det_mp(s, p)
    if d == 0:
        return complex(-np.inf), "mp"
    return complex(float(abs(d).log().mid()), float(d.arg().mid())), "mp"


def _rel_change(a: complex, b: complex) -> float:
    if a.real == -np.inf and b.real == -np.inf:
        return 0.0
    scale = max(1.0, math.exp(min(max(a.real, b.real), 700.0)))
    za = np.exp(complex(a.real, a.imag)) if a.real > -np.inf else 0j
    zb = np.exp(complex(b.real, b.imag)) if b.real > -np.inf else 0j
    return float(abs(za - zb) / scale)


def zeta_eval_report(q: ZetaQuery) -> ZetaResult:
    """det(1 - A(s)) with the M-convergence flag.

    With M fixed by the query a single comparison against M+20 is made.
    Otherwise M grows by 20 until two consecutive truncations agree to 1e-8
    (relative to max(1, |Z|)) or the cap is reached.
    """
    s = q.s
    M = q.params().M
    fixed = q.M is not None
    cur, backend = _logdet(s, q.params(M), q.backend)
    while True:
        nxt, backend2 = _logdet(s, q.params(M + M_STEP), q.backend)
        change = _rel_change(cur, nxt)
        if change < CONV_TOL or fixed or M + M_STEP >= M_CAP:
            converged = change < CONV_TOL
            if not converged:
                log.warning("zeta at s=%s not converged in M (change %.2e at M=%d)", s, change, M)
            return ZetaResult(s, cur, M, converged, backend, change)
        M += M_STEP
        cur, backend = nxt, backend2


def zeta_eval(q: ZetaQuery) -> complex:
    return zeta_eval_report(q).value


# -- Euler product -----------------------------------------------------------

_class_cache: dict = {}


def primitive_classes(w: float, ell_max: float):
    key = (float(w), float(ell_max))
    if key not in _class_cache:
        _class_cache[key] = enumerate_primitive_classes(w, ell_max)
    return _class_cache[key]


@dataclass
class EulerProductResult:
    value: complex
    n_classes: int
    tail_estimate: float


def _auto_k_max(s: complex, ell_min: float) -> int:
    # factors with e^{-(Re s + k) l} below 1e-17 are dropped
    return max(3, int(math.ceil(17.0 * math.log(10.0) / ell_min - s.real)))


def euler_product_report(q: ZetaQuery, ell_max: float, k_max: int | None = None,
                         check_region: bool = True) -> EulerProductResult:
    """Truncated product of det(1 - rho(gamma) e^{-(s+k) l(gamma)}) over
    primitive classes with l <= ell_max and 0 <= k <= k_max.

    By default k_max is large enough that the omitted k-factors are below
    double precision for the shortest class.

    The tail estimate is the summed |log factor| of the classes in the last
    unit length band, a rough proxy for what lies beyond ell_max.
    """
    s = q.s
    if check_region:
        from .resonances import compute_delta
        delta = compute_delta(q.w)
        if not s.real > delta + 0.05:
            raise RegimeError("Euler product diverges for Re s <= delta", s=s, delta=delta)
    classes = primitive_classes(q.w, ell_max) if ell_max > 0 else []
    if k_max is None:
        k_max = _auto_k_max(s, classes[0][1]) if classes else 0
    log_total = 0j
    band = 0.0
    d = q.rep.dim
    for word, ell in classes:
        U = evaluate_rep(q.rep, word)
        lf = 0j
        for k in range(k_max + 1):
            x = np.exp(-(s + k) * ell)
            lf += complex(np.log(np.linalg.det(np.eye(d) - U * x)))
        log_total += lf
        if ell > ell_max - 1.0:
            band += abs(lf)
    return EulerProductResult(complex(np.exp(log_total)), len(classes), band)


def euler_product(q: ZetaQuery, ell_max: float, k_max: int | None = None) -> complex:
    return euler_product_report(q, ell_max, k_max).value


# -- index-2 factorization ---------------------------------------------------

def factorization_check(w: float, s: complex, M: int | None = None, R: float | None = None) -> float:
    """Relative residual of Z(s, Ind) = Z(s, 1) Z(s, sign) on truncated matrices."""
    triv, sgn = index2_summands()
    out = []
    for rep in (induce_from_index2(w), triv, sgn):
        p = ZetaQuery(w, s, rep, M=M, R=R).params()
        out.append(lu_logdet(np.eye(p.size) - build_closed(s, p).A))
    prod = out[1] + out[2]
    return float(abs(np.exp(out[0] - prod) - 1.0))


# -- growth scan -------------------------------------------------------------

@dataclass
class GrowthScanResult:
    sigma: float
    t: np.ndarray
    log_abs_Z: np.ndarray
    M_used: np.ndarray
    converged: np.ndarray
    window_t: np.ndarray
    window_max: np.ndarray
    beta: float
    intercept: float
    r2: float
    delta: float
    refined_C: float
    refined_residual: float
    skipped: list = field(default_factory=list)
    values: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma, "beta_hat": self.beta, "intercept": self.intercept, "r2": self.r2,
            "delta": self.delta, "refined_C": self.refined_C,
            "refined_residual": self.refined_residual,
            "window_t": [float(x) for x in self.window_t],
            "window_max": [float(x) for x in self.window_max],
            "all_converged": bool(np.all(self.converged)), "skipped": list(self.skipped),
        }


def refined_envelope(t, delta: float) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return t ** delta * np.log(t) ** (2.0 - delta)


def growth_scan(w: float, rep: UnitaryRep, sigma: float, t_min: float, t_max: float,
                steps: int, delta: float | None = None, backend: str = "auto",
                R: float | None = None, progress=None) -> GrowthScanResult:
    """log|Z(sigma + it)| on a geometric grid with dyadic-window envelope fit."""
    if not t_min >= 1.0:
        raise ParameterError("growth scan needs t_min >= 1", t_min=t_min)
    if not t_max > t_min or steps < 2:
        raise ParameterError("need t_max > t_min and steps >= 2", t_min=t_min, t_max=t_max)
    if delta is None:
        from .resonances import compute_delta
        delta = compute_delta(w)
    grid = np.geomspace(t_min, t_max, int(steps))
    ts, la, Ms, conv, vals, skipped = [], [], [], [], [], []
    for t in grid:
        try:
            r = zeta_eval_report(ZetaQuery(w, complex(sigma, t), rep, R=R, backend=backend))
        except PoleError:
            skipped.append(float(t))
            continue
        ts.append(float(t))
        la.append(r.log_abs)
        Ms.append(r.M_used)
        conv.append(r.converged)
        vals.append(r.value)
        if progress:
            progress(t, r)
    ts = np.array(ts)
    la = np.array(la)
    beta, icpt, r2, wt, wm = dyadic_window_fit(ts, la, t0=t_min)
    keep = wm > 0
    C, resid = float("nan"), float("nan")
    if keep.any():
        g = refined_envelope(wt[keep], delta)
        C = float(np.dot(g, wm[keep]) / np.dot(g, g))
        resid = float(np.sqrt(np.mean((wm[keep] - C * g) ** 2)) / np.mean(wm[keep]))
    return GrowthScanResult(float(sigma), ts, la, np.array(Ms), np.array(conv), wt, wm,
                            beta, icpt, r2, float(delta), C, resid, skipped, np.array(vals))
