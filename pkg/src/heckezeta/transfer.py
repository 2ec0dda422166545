"""Matrix discretization of the twisted transfer operator

    L_{s,rho} f(z) = sum_{n != 0} (gamma_n'(z))^s rho(gamma_n)^{-1} f(gamma_n(z)),
    gamma_n(z) = -1/(z + n w),

acting on V-valued holomorphic functions on the disk D(0, R).  Every branch
maps D(0, R) into D(0, 1/(w - R)), which is compactly inside D(0, R) when
R(w - R) > 1, so L is nuclear there and det(1 - L) does not depend on R.

Matrices are indexed by (degree j, component k) with flat index j*d + k.
Components are taken in the eigenbasis Q of rho(T), where
rho(T) = Q diag(exp(-2 pi i lam_k)) Q*.  In the monomial ("raw") basis

    A[(j,k),(m,l)] = Shat_{kl} (2s+m)_j / j! w^{-(2s+m+j)}
                     [ (-1)^{m+j} F(lam_k, 2s+m+j) + F(1-lam_k, 2s+m+j) ]

with F the periodic zeta function; the first term comes from the branches
n >= 1 ("positive"), the second from n <= -1 ("negative").  Because F is
meromorphic in its order this formula continues L_{s,rho} to all s off
(1 - N_0)/2.  The orthonormal Bergman basis e_j = sqrt((j+1)/pi) z^j / R^{j+1}
is related by the diagonal similarity D_j = R^{j+1}/sqrt(j+1).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import linalg as sla
from scipy import special as _sp

from .errors import ParameterError, PoleError, RegimeError, ResourceLimitError
from .group import UnitaryRep, check_width, hull_endpoint, trivial_rep
from .specfun import periodic_zeta

log = logging.getLogger(__name__)

POLE_TOL = 1e-8
DEFAULT_MAX_SIZE = 2000


def default_radius(w: float) -> float:
    return 0.5 * (hull_endpoint(w) + 1.0)


@dataclass(frozen=True)
class DiscretizationParams:
    w: float
    M: int = 40
    R: float | None = None
    rep: UnitaryRep = field(default_factory=trivial_rep)
    N_direct: int = 100_000
    max_size: int = DEFAULT_MAX_SIZE

    def __post_init__(self):
        w = check_width(self.w)
        object.__setattr__(self, "w", w)
        R = default_radius(w) if self.R is None else float(self.R)
        object.__setattr__(self, "R", R)
        r_min = hull_endpoint(w)
        if not (r_min < R < 1.0):
            raise ParameterError("disk radius must lie in (r_min, 1)", R=R, r_min=r_min)
        if not 1.0 / (w - R) < R:
            raise ParameterError("branches must map the disk into itself", R=R, w=w)
        if not w * R > 1.0:
            raise ParameterError("need w R > 1", R=R, w=w)
        if int(self.M) != self.M or self.M < 0:
            raise ParameterError("M must be a nonnegative integer", M=self.M)
        object.__setattr__(self, "M", int(self.M))
        if self.size > self.max_size:
            raise ResourceLimitError("matrix size exceeds the configured cap",
                                     size=self.size, max_size=self.max_size)

    @property
    def d(self) -> int:
        return self.rep.dim

    @property
    def size(self) -> int:
        return self.rep.dim * (self.M + 1)

    @property
    def contraction(self) -> float:
        """Ratio 1/(R(w - R)) governing the geometric decay of the operator."""
        return 1.0 / (self.R * (self.w - self.R))

    def with_(self, **kw) -> "DiscretizationParams":
        return replace(self, **kw)


@dataclass
class TransferMatrix:
    A: np.ndarray
    s: complex
    params: DiscretizationParams
    basis: str = "bergman"
    branch: str = "full"
    tail_bound: float = 0.0
    tail_warning: bool = False

    @property
    def size(self) -> int:
        return self.A.shape[0]

    def to_basis(self, basis: str) -> "TransferMatrix":
        if basis == self.basis:
            return self
        D = np.repeat(bergman_scale(self.params.M, self.params.R), self.params.d)
        if basis == "raw" and self.basis == "bergman":
            A = self.A * (1.0 / D)[:, None] * D[None, :]
        elif basis == "bergman" and self.basis == "raw":
            A = self.A * D[:, None] * (1.0 / D)[None, :]
        else:
            raise ParameterError("unknown basis", basis=basis)
        return replace(self, A=A, basis=basis)

    def det_one_minus(self) -> complex:
        return lu_det(np.eye(self.size) - self.A)

    def log_det_one_minus(self) -> complex:
        return lu_logdet(np.eye(self.size) - self.A)


def bergman_scale(M: int, R: float) -> np.ndarray:
    """D_j = R^{j+1}/sqrt(j+1): z^j = sqrt(pi) D_j e_j."""
    j = np.arange(M + 1)
    return R ** (j + 1.0) / np.sqrt(j + 1.0)


def lu_logdet(B: np.ndarray) -> complex:
    """Complex log det(B) from a pivoted LU factorization (branch: sum of logs)."""
    lu, piv = sla.lu_factor(B, check_finite=False)
    diag = np.diag(lu).astype(complex)
    if np.any(diag == 0):
        return complex(-np.inf, 0.0)
    swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
    return complex(np.sum(np.log(diag)) + 1j * math.pi * (swaps % 2))


def lu_det(B: np.ndarray) -> complex:
    ld = lu_logdet(B)
    if ld.real == -np.inf:
        return 0j
    return complex(np.exp(ld))


# -- closed form --------------------------------------------------------------

def _coefficients(s: complex, M: int, w: float, R: float) -> np.ndarray:
    """Bergman-scaled binomial factors (D_j/D_m) (2s+m)_j/j! w^{-(2s+m+j)}, shape (j, m)."""
    m = np.arange(M + 1)
    two_s = 2.0 * s
    col0 = np.exp(-two_s * math.log(w)) * (w * R) ** (-m.astype(float)) * np.sqrt(m + 1.0)
    if M == 0:
        return col0[None, :].astype(complex)
    i = np.arange(M)[:, None]
    ratio = (two_s + m[None, :] + i) / (i + 1.0) * (R / w) * np.sqrt((i + 1.0) / (i + 2.0))
    C = np.empty((M + 1, M + 1), dtype=complex)
    C[0] = col0
    C[1:] = col0[None, :] * np.cumprod(ratio, axis=0)
    return C


def _check_poles(s: complex, params: DiscretizationParams):
    lam = params.rep.lambdas
    if not np.any(lam == 0.0):
        return
    q = 1.0 - 2.0 * s
    qr = round(q.real)
    if abs(q - qr) < POLE_TOL and 0 <= qr <= 2 * params.M:
        k = int(np.flatnonzero(lam == 0.0)[0])
        m = int(min(qr, params.M))
        raise PoleError("transfer matrix entry at a pole of the periodic zeta function",
                        s=complex(s), m=m, j=int(qr) - m, k=k)


def _zeta_table(s: complex, params: DiscretizationParams):
    """F(lam_k, 2s+q) and F(1-lam_k, 2s+q) for q = 0..2M, shape (d, 2M+1)."""
    sig = 2.0 * s + np.arange(2 * params.M + 1)
    lam = params.rep.lambdas
    cache: dict[float, np.ndarray] = {}

    def F(x):
        key = round(float(x) % 1.0, 15) % 1.0
        if key not in cache:
            cache[key] = periodic_zeta(key, sig)
        return cache[key]

    Fp = np.array([F(l) for l in lam])
    Fm = np.array([F(1.0 - l) for l in lam])
    return Fp, Fm


def _assemble(C: np.ndarray, Fp: np.ndarray, Fm: np.ndarray, S_hat: np.ndarray, branch: str):
    M = C.shape[0] - 1
    d = S_hat.shape[0]
    jj, mm = np.meshgrid(np.arange(M + 1), np.arange(M + 1), indexing="ij")
    q = jj + mm
    sign = np.where(q % 2 == 0, 1.0, -1.0)
    bracket = np.zeros((M + 1, M + 1, d), dtype=complex)
    if branch in ("full", "positive"):
        bracket += (sign[:, :, None] * np.moveaxis(Fp[:, q], 0, -1))
    if branch in ("full", "negative"):
        bracket += np.moveaxis(Fm[:, q], 0, -1)
    if branch not in ("full", "positive", "negative", "signed"):
        raise ParameterError("unknown branch selector", branch=branch)
    if branch == "signed":
        bracket = sign[:, :, None] * np.moveaxis(Fp[:, q], 0, -1) - np.moveaxis(Fm[:, q], 0, -1)
    A = np.einsum("jm,jmk,kl->jkml", C, bracket, S_hat)
    n = (M + 1) * d
    return A.reshape(n, n)


def build_closed(s: complex, params: DiscretizationParams, basis: str = "bergman",
                 branch: str = "full") -> TransferMatrix:
    """Closed-form matrix of L_{s,rho}, valid for every s off the pole set.

    ``branch`` selects the n >= 1 part ("positive"), the n <= -1 part
    ("negative"), their sum ("full") or the signed combination
    positive - negative ("signed") used by the continuation recursion.
    """
    s = complex(s)
    _check_poles(s, params)
    C = _coefficients(s, params.M, params.w, params.R)
    Fp, Fm = _zeta_table(s, params)
    A = _assemble(C, Fp, Fm, params.rep.S_hat, branch)
    tm = TransferMatrix(A, s, params, "bergman", branch)
    return tm.to_basis(basis)


def branch_matrix(s: complex, params: DiscretizationParams, sign: str,
                  basis: str = "bergman") -> TransferMatrix:
    if sign not in ("positive", "negative"):
        raise ParameterError("sign must be 'positive' or 'negative'", sign=sign)
    return build_closed(s, params, basis=basis, branch=sign)


def fredholm_det(s: complex, params: DiscretizationParams) -> complex:
    """det(1 - L_{s,rho}) from the truncated Bergman-basis matrix."""
    return build_closed(s, params).det_one_minus()


def fredholm_logdet(s: complex, params: DiscretizationParams) -> complex:
    return build_closed(s, params).log_det_one_minus()


# -- direct summation oracle --------------------------------------------------

def _em_tail_untwisted(sigma: np.ndarray, x: float):
    """sum_{n >= x} n^{-sigma} (Euler-Maclaurin, 4 terms) and the next-term size."""
    xs = np.exp(-sigma * math.log(x))
    val = (x * xs / (sigma - 1.0) + 0.5 * xs + sigma * xs / (12.0 * x)
           - sigma * (sigma + 1) * (sigma + 2) * xs / (720.0 * x ** 3))
    nxt = np.abs(sigma * (sigma + 1) * (sigma + 2) * (sigma + 3) * (sigma + 4)) * np.abs(xs) / (30240.0 * x ** 5)
    return val, nxt


def _em_tail_twisted(sigma: np.ndarray, lam: float, x: int):
    """sum_{n >= x} e^{2 pi i n lam} n^{-sigma} to second order in 1/x."""
    z = np.exp(2j * math.pi * lam)
    g0 = 1.0 / (1.0 - z)
    g1 = z / (1.0 - z) ** 2
    g2 = z * (1.0 + z) / (2.0 * (1.0 - z) ** 3)
    zx = np.exp(2j * math.pi * ((lam * x) % 1.0))
    xs = np.exp(-sigma * math.log(x))
    val = zx * xs * (g0 - g1 * sigma / x)
    nxt = np.abs(g2 * sigma * (sigma + 1)) * np.abs(xs) / x ** 2
    return val, nxt


def _branch_sums(sig: np.ndarray, lam: float, N: int, chunk: int = 20_000):
    """sum_{n=1}^{N} e^{2 pi i n lam} n^{-sig} plus corrected tail; returns (value, tail bound)."""
    acc = np.zeros(sig.shape, dtype=complex)
    for lo in range(1, N + 1, chunk):
        n = np.arange(lo, min(N, lo + chunk - 1) + 1)
        phase = np.exp(2j * math.pi * ((lam * n) % 1.0))
        acc += np.exp(-np.outer(sig, np.log(n))) @ phase
    if lam == 0.0:
        tail, nxt = _em_tail_untwisted(sig, N + 1.0)
    else:
        tail, nxt = _em_tail_twisted(sig, lam, N + 1)
    return acc + tail, nxt


def build_direct(s: complex, params: DiscretizationParams, N_direct: int | None = None,
                 basis: str = "bergman", tol: float = 1e-10) -> TransferMatrix:
    """Matrix of L_{s,rho} by explicit summation over the branches 1 <= |n| <= N.

    Each branch contributes the Taylor coefficients of (z + n w)^{-(2s+m)}
    (n >= 1) or (|n| w - z)^{-(2s+m)} (n <= -1); the sum beyond N is
    replaced by its leading Euler-Maclaurin terms and the size of the
    first omitted term is reported as ``tail_bound``.
    """
    s = complex(s)
    if not s.real > 0.5:
        raise RegimeError("direct summation converges only for Re s > 1/2", s=s)
    N = int(params.N_direct if N_direct is None else N_direct)
    M, w, R, d = params.M, params.w, params.R, params.d
    lam = params.rep.lambdas
    q = np.arange(2 * M + 1)
    sig = 2.0 * s + q

    plus = np.empty((d, q.size), dtype=complex)
    minus = np.empty((d, q.size), dtype=complex)
    bound = np.zeros((d, q.size))
    for k, lk in enumerate(lam):
        plus[k], b1 = _branch_sums(sig, float(lk), N)
        minus[k], b2 = _branch_sums(sig, float((1.0 - lk) % 1.0), N)
        bound[k] = b1 + b2

    # binomial factor (2s+m)_j / j! via log-gamma
    jj, mm = np.meshgrid(np.arange(M + 1), np.arange(M + 1), indexing="ij")
    base = 2.0 * s + mm
    binom = np.exp(_sp.loggamma(base + jj) - _sp.loggamma(base) - _sp.gammaln(jj + 1.0))
    wpow = np.exp(-(base + jj) * math.log(w))
    Dj = bergman_scale(M, R)
    coef = binom * wpow * Dj[:, None] / Dj[None, :]
    qq = jj + mm
    sign = (-1.0) ** qq
    S_hat = params.rep.S_hat
    A = np.zeros((M + 1, d, M + 1, d), dtype=complex)
    tail = 0.0
    for k in range(d):
        entry = coef * (sign * plus[k][qq] + minus[k][qq])
        A[:, k, :, :] = entry[:, :, None] * S_hat[k][None, None, :]
        tail = max(tail, float(np.max(np.abs(coef) * bound[k][qq])) * float(np.max(np.abs(S_hat[k]))))
    n = (M + 1) * d
    tm = TransferMatrix(A.reshape(n, n), s, params, "bergman", "full",
                        tail_bound=tail, tail_warning=tail > tol)
    if tm.tail_warning:
        log.warning("direct builder tail bound %.2e exceeds %.1e", tail, tol)
    return tm.to_basis(basis)


# -- fixed-point trace oracle -------------------------------------------------

def trace_oracle(s: complex, params: DiscretizationParams, N_max: int = 100_000) -> complex:
    """sum_{0<|n|<=N} (x_n^2)^s / (1 - x_n^2) tr(rho(T)^{-n} rho(S)).

    x_n is the attracting fixed point of gamma_n (root of x^2 + n w x + 1)
    and gamma_n'(x_n) = x_n^2.  The tail n > N is added from the asymptotic
    x_n^2 = (n w)^{-2} (1 + 2 (n w)^{-2} + ...).
    """
    s = complex(s)
    if not s.real > 0.5:
        raise RegimeError("the trace formula needs Re s > 1/2", s=s)
    w = params.w
    lam = params.rep.lambdas
    diag = np.diag(params.rep.S_hat)
    total = 0j
    chunk = 200_000
    for lo in range(1, N_max + 1, chunk):
        n = np.arange(lo, min(N_max, lo + chunk - 1) + 1, dtype=float)
        nw = n * w
        x2 = (2.0 / (nw + np.sqrt(nw * nw - 4.0))) ** 2
        weight = np.exp(s * np.log(x2)) / (1.0 - x2)
        for k in range(len(lam)):
            ph = ((lam[k] * n) % 1.0)
            total += diag[k] * np.sum(weight * 2.0 * np.cos(2 * math.pi * ph))
    # tail n > N_max for untwisted components
    for k in range(len(lam)):
        if lam[k] == 0.0:
            sig = np.array([2.0 * s, 2.0 * s + 2.0])
            t, _ = _em_tail_untwisted(sig, N_max + 1.0)
            corr = np.exp(-2.0 * s * math.log(w)) * (t[0] + (2.0 * s + 1.0) * w ** -2.0 * t[1])
            total += diag[k] * 2.0 * corr
        else:
            for lk in (lam[k], 1.0 - lam[k]):
                t, _ = _em_tail_twisted(np.array([2.0 * s]), float(lk), N_max + 1)
                total += diag[k] * np.exp(-2.0 * s * math.log(w)) * t[0]
    return complex(total)


# -- continuation structure ---------------------------------------------------

def psi1_matrix(params: DiscretizationParams, basis: str = "bergman") -> np.ndarray:
    """Matrix of f -> -(f - f(0))/z."""
    M, d = params.M, params.d
    P = np.zeros((M + 1, M + 1))
    idx = np.arange(M)
    P[idx, idx + 1] = -1.0
    if basis == "bergman":
        D = bergman_scale(M, params.R)
        P = P * D[:, None] / D[None, :]
    elif basis != "raw":
        raise ParameterError("unknown basis", basis=basis)
    return np.kron(P, np.eye(d))


def rank_one_F(s: complex, params: DiscretizationParams, basis: str = "bergman",
               branch: str = "full") -> np.ndarray:
    """f -> E_s(z) rho(S) f(0): the degree-0 block column of the transfer matrix."""
    A = build_closed(s, params, basis=basis, branch=branch).A
    F = np.zeros_like(A)
    F[:, :params.d] = A[:, :params.d]
    return F


def numerical_rank(X: np.ndarray, rel_tol: float = 1e-10) -> int:
    sv = np.linalg.svd(X, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.count_nonzero(sv > rel_tol * sv[0]))


@dataclass
class RecursionReport:
    residual: float
    step_residuals: list
    rank: int
    rank_bound: int
    finite_part: np.ndarray = field(repr=False)
    remainder: np.ndarray = field(repr=False)


def recursion_check(s: complex, k: int, params: DiscretizationParams) -> RecursionReport:
    """Check L_s = sum_{i<k} G_i Psi_1^i + X_k Psi_1^k on the truncated matrices.

    X_0 = L_s and X_{i+1} is the operator at s + (i+1)/2, alternating between
    the signed combination (positive - negative branches) and the full one:
    column m >= 1 of L_s equals column m-1 of (negative - positive)(s + 1/2).
    G_i keeps the degree-0 block column of X_i.
    """
    s = complex(s)
    if int(k) != k or k < 1:
        raise ParameterError("k must be a positive integer", k=k)
    d = params.d
    Psi = psi1_matrix(params)
    X = []
    for i in range(k + 1):
        si = s + 0.5 * i
        try:
            X.append(build_closed(si, params, branch="full" if i % 2 == 0 else "signed").A)
        except PoleError as exc:
            raise PoleError(f"pole at shifted point s + {i}/2", j=i, **exc.details) from exc
    steps = []
    G = []
    for i in range(k):
        Gi = np.zeros_like(X[i])
        Gi[:, :d] = X[i][:, :d]
        G.append(Gi)
        steps.append(float(np.max(np.abs(X[i] - Gi - X[i + 1] @ Psi))))
    finite = np.zeros_like(X[0])
    Pj = np.eye(Psi.shape[0])
    for i in range(k):
        finite += G[i] @ Pj
        Pj = Pj @ Psi
    remainder = X[k] @ Pj
    resid = float(np.max(np.abs(X[0] - finite - remainder)))
    return RecursionReport(resid, steps, numerical_rank(finite), k * d, finite, remainder)


# -- singular values ----------------------------------------------------------

@dataclass
class SingularValueReport:
    mu: np.ndarray
    slope: float
    intercept: float
    fit_range: tuple


def singular_values(s: complex, params: DiscretizationParams, floor: float = 1e-12) -> SingularValueReport:
    """Singular values of the Bergman-basis matrix with a log-linear tail fit.

    The fit uses indices between a quarter and the last value above
    ``floor * mu_0`` so that neither the leading transient nor the rounding
    plateau enter the slope.
    """
    A = build_closed(s, params, basis="bergman").A
    mu = np.linalg.svd(A, compute_uv=False)
    above = np.flatnonzero(mu > floor * mu[0])
    hi = int(above[-1]) if above.size else 0
    lo = max(1, hi // 4)
    if hi - lo < 3:
        return SingularValueReport(mu, float("nan"), float("nan"), (lo, hi))
    k = np.arange(lo, hi + 1)
    slope, intercept = np.polyfit(k, np.log(mu[lo:hi + 1]), 1)
    return SingularValueReport(mu, float(slope), float(intercept), (lo, hi))


# -- arbitrary-precision backend ----------------------------------------------

def _mp_periodic_zeta(lam: float, sigma):
    import flint
    if lam == 0.0:
        return sigma.zeta()
    z = flint.acb(flint.arb(lam) * 2).exp_pi_i()
    return z.polylog(sigma)


def _mp_matrix(s: complex, params: DiscretizationParams, prec: int):
    """Bergman-basis matrix of L_{s,rho} as a flint acb_mat at ``prec`` bits."""
    import flint
    old = flint.ctx.prec
    flint.ctx.prec = prec
    try:
        M, d = params.M, params.d
        w = flint.arb(params.w)
        R = flint.arb(params.R)
        two_s = flint.acb(s.real, s.imag) * 2
        lam = params.rep.lambdas
        # F values, q = 0..2M
        keys = {}
        for l in list(lam) + [(1.0 - l) % 1.0 for l in lam]:
            keys.setdefault(round(float(l) % 1.0, 15) % 1.0, None)
        table = {k: [_mp_periodic_zeta(k, two_s + q) for q in range(2 * M + 1)] for k in keys}
        logw = w.log()
        S_hat = params.rep.S_hat
        Sh = [[flint.acb(complex(S_hat[k, l]).real, complex(S_hat[k, l]).imag) for l in range(d)]
              for k in range(d)]
        ent = [[flint.acb(0)] * (d * (M + 1)) for _ in range(d * (M + 1))]
        for m in range(M + 1):
            # c_j = (D_j/D_m) (2s+m)_j/j! w^{-(2s+m+j)}
            c = (two_s * (-logw)).exp() * (w * R) ** (-m) * flint.arb(m + 1).sqrt()
            for j in range(M + 1):
                if j > 0:
                    c = c * (two_s + m + j - 1) / j * (R / w) * (flint.arb(j) / (j + 1)).sqrt()
                q = j + m
                sg = 1 if q % 2 == 0 else -1
                for k in range(d):
                    lp = round(float(lam[k]) % 1.0, 15) % 1.0
                    lm = round(float(1.0 - lam[k]) % 1.0, 15) % 1.0
                    br = c * (table[lp][q] * sg + table[lm][q])
                    for l in range(d):
                        if Sh[k][l] != 0:
                            ent[j * d + k][m * d + l] = br * Sh[k][l]
        return flint.acb_mat(ent)
    finally:
        flint.ctx.prec = old


def fredholm_det_mp(s: complex, params: DiscretizationParams, prec: int = 128,
                    rel_tol: float = 1e-12, max_prec: int = 8192):
    """det(1 - L_{s,rho}) in ball arithmetic; precision doubles until the
    relative radius of the result is below ``rel_tol``.  Returns (value, prec)
    where value is a flint acb (its magnitude may exceed double range)."""
    import flint
    s = complex(s)
    _check_poles(s, params)
    while True:
        old = flint.ctx.prec
        flint.ctx.prec = prec
        try:
            A = _mp_matrix(s, params, prec)
            n = A.nrows()
            d = (flint.acb_mat(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)]) - A).det()
            ok = d.rad() <= abs(d).lower() * rel_tol if abs(d).lower() > 0 else False
        finally:
            flint.ctx.prec = old
        if ok:
            return d, prec
        if prec >= max_prec:
            raise ResourceLimitError("precision cap reached in ball-arithmetic determinant",
                                     s=s, prec=prec)
        prec *= 2


def log_abs_det_mp(s: complex, params: DiscretizationParams, **kw) -> float:
    d, _ = fredholm_det_mp(s, params, **kw)
    return float(abs(d).log().mid())


# -- determinant inequalities -------------------------------------------------

def weyl_bound(A: np.ndarray) -> tuple[float, float]:
    """(log|det(1 - A)|, sum log(1 + mu_k(A)))."""
    mu = np.linalg.svd(A, compute_uv=False)
    lhs = lu_logdet(np.eye(A.shape[0]) - A).real
    return float(lhs), float(np.sum(np.log1p(mu)))


def seiler_simon(F: np.ndarray, T: np.ndarray, rank_tol: float = 1e-10) -> tuple[float, float]:
    """(log|det(1 + F + T)|, rank(F) log(1 + ||F||) + sum log(1 + mu_m(T)))."""
    lhs = lu_logdet(np.eye(F.shape[0]) + F + T).real
    r = numerical_rank(F, rank_tol)
    normF = float(np.linalg.norm(F, 2)) if F.size else 0.0
    mu = np.linalg.svd(T, compute_uv=False)
    return float(lhs), float(r * math.log1p(normF) + np.sum(np.log1p(mu)))
