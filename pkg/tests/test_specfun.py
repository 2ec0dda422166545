import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heckezeta.errors import ParameterError, PoleError
from heckezeta.specfun import (PeriodicZetaQuery, dyadic_window_fit, gamma, hurwitz_zeta, lerch,
                               lerch_growth_scan, loggamma, periodic_zeta)


def test_hurwitz_reference_values():
    assert abs(hurwitz_zeta(2, 1.0) - math.pi ** 2 / 6) < 1e-13
    assert abs(hurwitz_zeta(-1, 1.0) + 1 / 12) < 1e-12
    assert abs(hurwitz_zeta(0, 0.3) - 0.2) < 1e-13


def test_hurwitz_against_mpmath():
    for s in (0.5 + 14j, -2.5 + 3j, 3.3 - 40j, 1.0001):
        for a in (0.1, 0.5, 1.7):
            ref = complex(mpmath.zeta(s, a))
            assert abs(hurwitz_zeta(s, a) - ref) < 1e-11 * max(1, abs(ref))


def test_hurwitz_pole_and_domain():
    with pytest.raises(PoleError):
        hurwitz_zeta(1.0, 0.5)
    with pytest.raises(ParameterError):
        hurwitz_zeta(2.0, 0.0)


def test_hurwitz_vectorized_matches_scalar():
    s = np.array([2 + 1j, 0.3 - 5j, -1.5 + 0j])
    v = hurwitz_zeta(s, 0.7)
    assert np.allclose(v, [hurwitz_zeta(x, 0.7) for x in s], rtol=1e-14, atol=0)


def test_periodic_half_twist():
    # sum (-1)^n n^-2 = -pi^2/12
    assert abs(periodic_zeta(0.5, 2.0) + math.pi ** 2 / 12) < 1e-12


def test_periodic_lambda_zero_is_riemann():
    assert abs(periodic_zeta(0.0, 4.0) - math.pi ** 4 / 90) < 1e-14
    with pytest.raises(PoleError):
        periodic_zeta(0.0, 1.0)


def test_periodic_integer_lambda_reduces():
    assert periodic_zeta(1.0, 3.0) == periodic_zeta(0.0, 3.0)


def test_periodic_against_polylog():
    for lam in (0.1, 0.25, 0.9):
        z = mpmath.exp(2j * mpmath.pi * lam)
        for sig in (2.5 + 3j, 0.3 + 10j, -1.2 - 2j, 1.0 + 0j):
            ref = complex(mpmath.polylog(sig, z))
            assert abs(periodic_zeta(lam, sig) - ref) < 1e-10 * max(1, abs(ref))


def test_jonquiere_vs_direct_overlap_grid():
    """Both evaluation routes agree where both are valid (50 points)."""
    lam = np.array([0.15, 0.35, 0.5, 0.65, 0.85])
    sig = np.array([1.6 + 0j, 2.0 + 1j, 2.5 - 3j, 3.0 + 6j, 1.8 + 10j,
                    2.2 - 8j, 4.0 + 2j, 1.7 - 1j, 3.5 + 12j, 2.7 + 0.5j])
    worst = 0.0
    for l in lam:
        d = periodic_zeta(l, sig, method="direct")
        c = periodic_zeta(l, sig, method="continuation")
        worst = max(worst, float(np.max(np.abs(d - c) / np.maximum(1, np.abs(d)))))
    assert worst < 1e-8


def test_periodic_query_pole_flag():
    assert PeriodicZetaQuery(0.0, 1.0).is_pole
    assert not PeriodicZetaQuery(0.3, 1.0).is_pole
    with pytest.raises(ParameterError):
        PeriodicZetaQuery(0.2, 2.0, method="nope")


def test_lerch_brute_force():
    z, s, lam = 0.3, 2.5 + 4j, 0.25
    n = np.arange(1, 400001)
    brute = np.sum(np.exp(2j * np.pi * n * lam) * (n + z) ** (-s))
    assert abs(lerch(z, s, lam) - brute) < 1e-9


def test_lerch_untwisted_is_shifted_hurwitz():
    assert abs(lerch(0.2, 3.0, 0.0) - hurwitz_zeta(3.0, 1.2)) < 1e-13


def test_lerch_rejects_outside_disk():
    with pytest.raises(ParameterError):
        lerch(1.0, 2.0, 0.3)


def test_gamma_wrappers():
    assert abs(gamma(5) - 24) < 1e-12
    assert abs(loggamma(0.5) - 0.5 * math.log(math.pi)) < 1e-14


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(1.6, 4.0), st.floats(-15, 15))
def test_periodic_conjugation_symmetry(lam, x, y):
    # conj F(lam, s) = F(1 - lam, conj s)
    a = periodic_zeta(lam, complex(x, y))
    b = periodic_zeta(1 - lam, complex(x, -y))
    assert abs(a.conjugate() - b) < 1e-11 * max(1, abs(a))


def test_dyadic_fit_recovers_power():
    t = np.geomspace(10, 1000, 60)
    slope, _, r2, wt, wm = dyadic_window_fit(t, 3 * t ** 0.7)
    assert abs(slope - 0.7) < 1e-10 and r2 > 0.999


def test_lerch_growth_is_polynomial():
    fit = lerch_growth_scan(0.3, 0.25, 0.4, np.geomspace(2, 200, 40))
    # convexity: |H| ~ t^(1/2 - sigma) on this line
    assert math.isfinite(fit.alpha) and 0.0 < fit.alpha < 0.6


def test_lerch_large_imaginary_order_against_hurwitz_split():
    # lam = 3/10: H = 10^{-s} sum_r e^{2 pi i 3r/10} zeta(s, (r + z)/10), in ball arithmetic
    flint = pytest.importorskip("flint")
    flint.ctx.prec = 200
    try:
        for z, s in ((0.4, 0.25 + 200j), (-0.5, -1 + 50j)):
            S = flint.acb(s)
            tot = flint.acb(0)
            for r in range(1, 11):
                tot += (flint.acb.pi() * flint.acb(0, 0.6 * r)).exp() * flint.acb.zeta(S, flint.acb((r + z) / 10))
            ref = complex((tot * (-S * flint.acb(10).log()).exp()).mid())
            assert abs(lerch(z, s, 0.3) - ref) < 1e-11 * abs(ref)
    finally:
        flint.ctx.prec = 53
