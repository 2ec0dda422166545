"""Complex special functions: Gamma, Hurwitz zeta, periodic zeta and the
shifted Lerch zeta H(z, s, lam) = sum_{n>=1} e^{2 pi i n lam} (n + z)^{-s}.

All routines work in double precision and accept numpy arrays for the
order argument so that whole columns of a transfer matrix can be filled in
one call.

Periodic zeta F(lam, sigma) = sum_{n>=1} e^{2 pi i n lam} n^{-sigma} is
evaluated by one of two independent routes:

* ``direct``: head sum plus an Euler-Maclaurin type tail for the twisted
  series.  For z = e^{2 pi i lam} != 1 the identity
  ``sum_{n>=N} z^n f(n) = sum_k g_k f^{(k)}(N)`` holds with g_k the Taylor
  coefficients of 1/(1 - z e^t); these are Hurwitz values at integers.
* ``continuation``: the Jonquiere inversion formula through
  zeta(1 - sigma, lam) and zeta(1 - sigma, 1 - lam).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp

from .errors import ParameterError, PoleError

TWO_PI = 2.0 * math.pi
LOG_TWO_PI = math.log(TWO_PI)

# B_{2k} / (2k)! for k = 1..30
_BERN_RATIO = np.array(
    [_sp.bernoulli(2 * k)[2 * k] / math.factorial(2 * k) for k in range(1, 31)]
)

EM_TERMS = 12
NEAR_INTEGER = 0.05
DIRECT_RE_MIN = 1.5


def gamma(z):
    """Complex Gamma function (scipy's Lanczos/reflection implementation)."""
    return _sp.gamma(np.asarray(z, dtype=complex))


def loggamma(z):
    """Principal branch of log Gamma, analytic off the negative real axis."""
    return _sp.loggamma(np.asarray(z, dtype=complex))


def _as_complex_array(x):
    arr = np.asarray(x, dtype=complex)
    return arr, arr.ndim == 0


def _fsum_rows(terms: np.ndarray) -> np.ndarray:
    re = np.array([math.fsum(row) for row in terms.real])
    im = np.array([math.fsum(row) for row in terms.imag])
    return re + 1j * im


def hurwitz_zeta(s, a: float, *, N: int | None = None, K: int = EM_TERMS,
                 compensated: bool = False):
    """Hurwitz zeta ``sum_{n>=0} (n + a)^{-s}`` continued to s != 1.

    Euler-Maclaurin with ``N`` explicit terms and ``K`` Bernoulli
    corrections.  ``N`` defaults to ``max(20, 2|Im s|, |s|)`` and is doubled
    until the last correction is below 1e-13 of the result.
    """
    a = float(a)
    if not a > 0:
        raise ParameterError("hurwitz_zeta needs a > 0", a=a)
    s_arr, scalar = _as_complex_array(s)
    s_flat = s_arr.ravel()
    if np.any(np.abs(s_flat - 1.0) < 1e-14):
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    if K > len(_BERN_RATIO):
        raise ParameterError("at most 30 Bernoulli terms are tabulated", K=K)

    if N is None:
        n_terms = int(math.ceil(max(20.0, 2.0 * float(np.max(np.abs(s_flat.imag), initial=0.0)),
                                    float(np.max(np.abs(s_flat), initial=0.0)))))
        adaptive = True
    else:
        n_terms = int(N)
        adaptive = False

    out = np.empty_like(s_flat)
    todo = np.arange(s_flat.size)
    for _ in range(8):
        vals, last = _hurwitz_em(s_flat[todo], a, n_terms, K, compensated)
        out[todo] = vals
        if not adaptive:
            break
        bad = np.abs(last) > 1e-13 * np.maximum(np.abs(vals), 1e-300)
        if not np.any(bad):
            break
        todo = todo[bad]
        n_terms *= 2
    out = out.reshape(s_arr.shape)
    return complex(out) if scalar else out


def _hurwitz_em(s, a, N, K, compensated):
    logs = np.log(np.arange(N) + a)
    terms = np.exp(-np.outer(s, logs))
    head = _fsum_rows(terms) if compensated else terms.sum(axis=1)
    x = N + a
    logx = math.log(x)
    x_pow = np.exp(-s * logx)  # x^{-s}
    tail = x * x_pow / (s - 1.0) + 0.5 * x_pow
    poch = s.copy()  # (s)_{2k-1}
    xk = x_pow / x   # x^{-s-2k+1}
    term = np.zeros_like(s)
    for k in range(1, K + 1):
        term = _BERN_RATIO[k - 1] * poch * xk
        tail = tail + term
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        xk = xk / (x * x)
    return head + tail, term


def _reduce_lambda(lam: float) -> float:
    lam = float(lam) % 1.0
    if lam > 1.0 - 1e-15:
        lam = 0.0
    return lam


def _dist_to_positive_integer(sigma: np.ndarray) -> np.ndarray:
    # includes 0, where the two Hurwitz poles of the Jonquiere formula cancel
    nearest = np.maximum(np.rint(sigma.real), 0.0)
    return np.abs(sigma - nearest)


@dataclass(frozen=True)
class PeriodicZetaQuery:
    lam: float
    sigma: complex
    method: str = "auto"

    def __post_init__(self):
        object.__setattr__(self, "lam", _reduce_lambda(self.lam))
        object.__setattr__(self, "sigma", complex(self.sigma))
        if self.method not in ("auto", "direct", "continuation"):
            raise ParameterError("unknown periodic zeta method", method=self.method)

    @property
    def is_pole(self) -> bool:
        return self.lam == 0.0 and abs(self.sigma - 1.0) < 1e-14

    def evaluate(self) -> complex:
        return periodic_zeta(self.lam, self.sigma, method=self.method)


def periodic_zeta(lam: float, sigma, method: str = "auto"):
    """F(lam, sigma) = sum_{n>=1} e^{2 pi i n lam} n^{-sigma}, continued in sigma.

    ``method='auto'`` uses the twisted Euler-Maclaurin summation for
    Re sigma > 1.5 and near nonnegative integers, the Jonquiere formula
    elsewhere.  For lam = 0 this is the Riemann zeta function.
    """
    lam = _reduce_lambda(lam)
    sig, scalar = _as_complex_array(sigma)
    flat = sig.ravel()
    if lam == 0.0:
        if np.any(np.abs(flat - 1.0) < 1e-14):
            raise PoleError("periodic zeta with lam = 0 has a pole at sigma = 1",
                            sigma=complex(flat[np.argmin(np.abs(flat - 1.0))]))
        out = hurwitz_zeta(flat, 1.0)
    else:
        if method == "direct":
            use_direct = np.ones(flat.shape, dtype=bool)
        elif method == "continuation":
            use_direct = np.zeros(flat.shape, dtype=bool)
        elif method == "auto":
            use_direct = (flat.real > DIRECT_RE_MIN) | (_dist_to_positive_integer(flat) < NEAR_INTEGER)
        else:
            raise ParameterError("unknown periodic zeta method", method=method)
        out = np.empty_like(flat)
        if np.any(use_direct):
            out[use_direct] = _periodic_direct(lam, flat[use_direct])
        if np.any(~use_direct):
            out[~use_direct] = _periodic_jonquiere(lam, flat[~use_direct])
    out = out.reshape(sig.shape)
    return complex(out) if scalar else out


def _periodic_jonquiere(lam: float, sigma: np.ndarray) -> np.ndarray:
    one_minus = 1.0 - sigma
    g = loggamma(one_minus) - one_minus * LOG_TWO_PI
    phase = 0.5j * math.pi * one_minus
    z1 = hurwitz_zeta(one_minus, lam)
    z2 = hurwitz_zeta(one_minus, 1.0 - lam)
    return np.exp(g + phase) * z1 + np.exp(g - phase) * z2


_TWISTED_TERMS = 30
_TWISTED_RATIO = 0.25
LERCH_TAYLOR_LIMIT = 8.0


def _twisted_tail_coefficients(lam: float, N: int, K: int) -> np.ndarray:
    """u_k = g_k N^{-k}, with g_k the Taylor coefficients of 1/(1 - e^{2 pi i lam} e^t)."""
    z = np.exp(TWO_PI * 1j * lam)
    u = np.empty(K + 1, dtype=complex)
    u[0] = 1.0 / (1.0 - z)
    p = np.arange(2, K + 2)
    # zeta(p, a) N^{-p} = (aN)^{-p} + zeta(p, a + 1) N^{-p}, kept finite for small a
    def scaled(a):
        rest = hurwitz_zeta(p.astype(complex), a + 1.0).real
        return (a * N) ** (-p.astype(float)) + rest * float(N) ** (-p.astype(float))
    z_hi = scaled(1.0 - lam)
    z_lo = scaled(lam)
    sign = (-1.0) ** p
    u[1:] = (TWO_PI * 1j) ** (-p.astype(float)) * N * (z_hi + sign * z_lo)
    return u


def _direct_count(re_sigma: np.ndarray) -> np.ndarray:
    """Terms needed for a plain partial sum to leave a tail below 1e-17."""
    a = np.maximum(re_sigma - 1.0, 1e-3)
    with np.errstate(over="ignore"):
        n = np.exp((math.log(1e17) - np.log(a)) / a)
    return np.where(re_sigma > 2.0, np.ceil(n), np.inf)


def _periodic_direct(lam: float, sigma: np.ndarray) -> np.ndarray:
    lp = min(lam, 1.0 - lam)
    K = _TWISTED_TERMS
    n_em = np.ceil((np.abs(sigma) + K) / (TWO_PI * lp * _TWISTED_RATIO)).astype(float)
    n_em = np.maximum(n_em, 20.0)
    n_plain = _direct_count(sigma.real)
    plain = n_plain <= n_em
    out = np.empty_like(sigma)
    if np.any(plain):
        N = int(np.max(n_plain[plain]))
        out[plain] = _twisted_head(lam, sigma[plain], N + 1)
    if np.any(~plain):
        N = int(np.max(n_em[~plain]))
        out[~plain] = _twisted_em(lam, sigma[~plain], N, K)
    return out


def _twisted_head(lam, sigma, N):
    """sum_{n=1}^{N-1} e^{2 pi i n lam} n^{-sigma}."""
    n = np.arange(1, N)
    phase = np.exp(TWO_PI * 1j * ((lam * n) % 1.0))
    chunk = max(1, 2_000_000 // max(N, 1))
    out = np.empty(sigma.shape, dtype=complex)
    logs = np.log(n)
    for i in range(0, sigma.size, chunk):
        blk = sigma[i:i + chunk]
        out[i:i + chunk] = np.exp(-np.outer(blk, logs)) @ phase
    return out


def _twisted_em(lam, sigma, N, K):
    head = _twisted_head(lam, sigma, N)
    u = _twisted_tail_coefficients(lam, N, K)
    acc = np.zeros_like(sigma)
    poch = np.ones_like(sigma)
    for k in range(K + 1):
        acc = acc + ((-1.0) ** k) * poch * u[k]
        poch = poch * (sigma + k)
    zN = np.exp(TWO_PI * 1j * ((lam * N) % 1.0))
    return head + zN * np.exp(-sigma * math.log(N)) * acc


def _lerch_em(z: complex, s: complex, lam: float) -> complex:
    """Head sum plus twisted Euler-Maclaurin tail in the variable n + z."""
    lp = min(lam, 1.0 - lam)
    K = _TWISTED_TERMS
    N = int(max(20, math.ceil((abs(s) + K) / (TWO_PI * lp * _TWISTED_RATIO))))
    n = np.arange(1, N)
    phase = np.exp(TWO_PI * 1j * ((lam * n) % 1.0))
    head = complex(np.sum(phase * np.exp(-s * np.log(n + z))))
    u = _twisted_tail_coefficients(lam, N, K)
    x = N + z
    acc = 0j
    poch = 1.0 + 0j
    ratio = N / x
    rk = 1.0 + 0j
    for k in range(K + 1):
        acc += ((-1.0) ** k) * poch * u[k] * rk
        poch *= (s + k)
        rk *= ratio
    zN = np.exp(TWO_PI * 1j * ((lam * N) % 1.0))
    return head + complex(zN * np.exp(-s * np.log(x)) * acc)


def lerch(z: complex, s: complex, lam: float) -> complex:
    """Shifted Lerch zeta H(z, s, lam) for |z| < 1.

    Small |s|: Taylor series in z, H = sum_j (-1)^j (s)_j / j! F(lam, s + j) z^j.
    Large |s|: direct summation in n + z with an Euler-Maclaurin tail.
    """
    z = complex(z)
    s = complex(s)
    lam = _reduce_lambda(lam)
    r = abs(z)
    if r >= 1.0:
        raise ParameterError("lerch needs |z| < 1", z=z)
    if r == 0.0:
        return periodic_zeta(lam, s)
    # the Taylor terms peak near (1 - r)^{-|s|}; switch to summation before
    # cancellation eats the digits
    if abs(s) * -math.log1p(-r) > LERCH_TAYLOR_LIMIT:
        if lam != 0.0:
            return _lerch_em(z, s, lam)
        if z.imag == 0.0:
            return hurwitz_zeta(s, 1.0 + z.real)
    coeffs = [1.0 + 0j]
    peak = 1.0
    j = 0
    while True:
        c = coeffs[-1] * (-(s + j)) / (j + 1) * z
        j += 1
        coeffs.append(c)
        peak = max(peak, abs(c))
        ratio = r * abs(s + j) / (j + 1)
        if ratio < 1.0 and abs(c) < 1e-17 * peak:
            break
        if j > 20000:
            raise ParameterError("lerch series did not converge", z=z, s=s)
    orders = s + np.arange(len(coeffs))
    if lam == 0.0 and np.any(np.abs(orders - 1.0) < 1e-12):
        hit = int(np.argmin(np.abs(orders - 1.0)))
        if abs(coeffs[hit]) > 0.0:
            raise PoleError("lerch term hits the pole of zeta", s=s, j=hit)
        orders = orders.copy()
        orders[hit] += 1e-3  # coefficient is exactly zero there
    vals = periodic_zeta(lam, orders)
    return complex(np.dot(np.array(coeffs), vals))


@dataclass
class GrowthFit:
    """Result of a growth-exponent scan; ``alpha`` is the fitted log-log slope."""

    t: np.ndarray
    values: np.ndarray
    alpha: float
    intercept: float
    r2: float
    window_t: np.ndarray
    window_max: np.ndarray
    flagged: list = field(default_factory=list)


def dyadic_window_fit(t: np.ndarray, y: np.ndarray, t0: float | None = None):
    """Least-squares slope of log(window max of y) against log t.

    Windows are [t0 2^k, t0 2^{k+1}); nonpositive maxima are dropped.
    Returns (slope, intercept, r2, window_t, window_max).
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    t0 = float(t.min()) if t0 is None else t0
    idx = np.floor(np.log2(t / t0) + 1e-12).astype(int)
    wt, wm = [], []
    for k in np.unique(idx):
        sel = idx == k
        i = np.argmax(y[sel])
        wt.append(t[sel][i])
        wm.append(y[sel][i])
    wt = np.array(wt)
    wm = np.array(wm)
    keep = wm > 0
    if keep.sum() < 2:
        return float("nan"), float("nan"), float("nan"), wt, wm
    X = np.log(wt[keep])
    Y = np.log(wm[keep])
    slope, intercept = np.polyfit(X, Y, 1)
    resid = Y - (slope * X + intercept)
    ss_tot = float(np.sum((Y - Y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2, wt, wm


def lerch_growth_scan(lam: float, sigma: float, z: complex, t_grid) -> GrowthFit:
    """Tabulate |H(z, sigma + it, lam)| and fit a polynomial growth exponent."""
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(np.abs(t_grid) < 1.0):
        raise ParameterError("growth scan needs |t| >= 1")
    ts, vals, flagged = [], [], []
    for t in t_grid:
        try:
            v = abs(lerch(z, complex(sigma, t), lam))
        except PoleError:
            flagged.append(float(t))
            continue
        ts.append(t)
        vals.append(v)
    ts = np.array(ts)
    vals = np.array(vals)
    slope, intercept, r2, wt, wm = dyadic_window_fit(np.abs(ts), vals)
    return GrowthFit(ts, vals, slope, intercept, r2, wt, wm, flagged)
