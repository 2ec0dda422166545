import math

import mpmath
import numpy as np
import pytest

from heckezeta.errors import ParameterError, PoleError, RegimeError, ResourceLimitError
from heckezeta.group import character_rep, trivial_rep
from heckezeta.transfer import (DiscretizationParams, bergman_scale, branch_matrix, build_closed,
                                build_direct, fredholm_det, fredholm_det_mp, lu_det, psi1_matrix,
                                rank_one_F, recursion_check, seiler_simon, singular_values,
                                trace_oracle, weyl_bound)

W3 = DiscretizationParams(w=3.0, M=30)


def test_entry_00_closed_form():
    # (0,0) raw entry is 2 zeta(2s) w^{-2s} for the trivial rep
    A1 = build_closed(1.0, W3, basis="raw").A
    assert abs(A1[0, 0] - 0.3655409038) < 1e-10
    A2 = build_closed(2.0, W3, basis="raw").A
    assert abs(A2[0, 0] - 2 * math.pi ** 4 / 90 / 81) < 1e-15


def test_parity_checkerboard_trivial_rep():
    A = build_closed(1.3 + 2j, W3, basis="raw").A
    j, m = np.meshgrid(np.arange(31), np.arange(31), indexing="ij")
    assert np.all(A[(j + m) % 2 == 1] == 0)


def test_bergman_similarity_preserves_det():
    a = build_closed(0.7 + 3j, W3, basis="raw").A
    b = build_closed(0.7 + 3j, W3, basis="bergman").A
    I = np.eye(a.shape[0])
    assert abs(lu_det(I - a) - lu_det(I - b)) < 1e-12


def test_branches_add_up():
    s = 1.1 + 4j
    p = DiscretizationParams(w=3.0, M=20, rep=character_rep(0.3))
    full = build_closed(s, p).A
    assert np.allclose(branch_matrix(s, p, "positive").A + branch_matrix(s, p, "negative").A,
                       full, atol=1e-15)


@pytest.mark.parametrize("lam", [0.0, 0.3])
def test_closed_vs_direct(lam):
    p = DiscretizationParams(w=3.0, M=20, rep=character_rep(lam))
    a = build_closed(1 + 5j, p).A
    tm = build_direct(1 + 5j, p, N_direct=20000)
    assert np.max(np.abs(a - tm.A)) < 1e-9
    assert tm.tail_bound < 1e-10


def test_direct_refuses_continuation_region():
    with pytest.raises(RegimeError):
        build_direct(0.3 + 1j, W3)


def test_trace_oracle():
    p = DiscretizationParams(w=3.0, M=40)
    tr = np.trace(build_closed(1.2, p).A)
    assert abs(tr - trace_oracle(1.2, p)) < 1e-8 * abs(tr)


def test_pole_location_reported():
    with pytest.raises(PoleError) as exc:
        build_closed(-1.0, W3)
    d = exc.value.details
    assert d["m"] + d["j"] == 3 and d["k"] == 0


def test_twisted_components_finite_at_pole_set():
    p = DiscretizationParams(w=3.0, M=10, rep=character_rep(0.25))
    for s in (0.0, -0.5, -2.0):
        assert np.all(np.isfinite(build_closed(s, p).A))


def test_params_validation():
    with pytest.raises(ParameterError):
        DiscretizationParams(w=3.0, R=0.3)
    with pytest.raises(ParameterError):
        DiscretizationParams(w=3.0, R=1.0)
    with pytest.raises(ResourceLimitError):
        DiscretizationParams(w=3.0, M=3000)


def test_domain_independence():
    for s in (0.2 + 1j, -0.3 + 2j, 1.5, 0.8 + 7j):
        a = fredholm_det(s, DiscretizationParams(w=3.0, M=60, R=0.6))
        b = fredholm_det(s, DiscretizationParams(w=3.0, M=60, R=0.8))
        assert abs(a - b) < 1e-9


def test_m_convergence_rate():
    # each +20 degrees gains at least two digits at |s| <= 10
    for s in (1.0, 0.3 + 5j, -0.4 + 8j):
        d = [fredholm_det(s, DiscretizationParams(w=3.0, M=M)) for M in (20, 40, 60)]
        e1, e2 = abs(d[0] - d[2]), abs(d[1] - d[2])
        assert e2 < 1e-2 * e1 or e2 < 1e-13


def test_ball_arithmetic_agrees_with_double():
    p = DiscretizationParams(w=3.0, M=30)
    for s in (1 + 5j, -0.3 + 2j):
        d, prec = fredholm_det_mp(s, p)
        assert abs(complex(d.mid()) - fredholm_det(s, p)) < 1e-10


def test_psi1_shift():
    p = DiscretizationParams(w=3.0, M=5)
    P = psi1_matrix(p, basis="raw")
    f = np.arange(1.0, 7.0)  # f(z) = 1 + 2z + ... + 6 z^5
    assert np.allclose(P @ f, -np.r_[f[1:], 0.0])


def test_rank_one_F_has_rank_d():
    F = rank_one_F(0.4 + 2j, DiscretizationParams(w=3.0, M=20))
    assert np.linalg.matrix_rank(F, tol=1e-12) == 1


@pytest.mark.parametrize("s,k", [(2 + 3j, 1), (0.2 + 5j, 2), (-0.7 + 1j, 3)])
def test_recursion_identity(s, k):
    r = recursion_check(s, k, DiscretizationParams(w=3.0, M=40))
    assert r.residual < 1e-10
    assert r.rank <= r.rank_bound


def test_recursion_rejects_bad_k():
    with pytest.raises(ParameterError):
        recursion_check(1.0, 0, W3)


def test_singular_values_decay_faster_than_contraction_bound():
    p = DiscretizationParams(w=3.0, M=60, R=0.7)
    rpt = singular_values(1.0, p)
    assert np.all(np.diff(rpt.mu) <= 1e-15)
    assert rpt.slope <= math.log(p.contraction) + 0.1


def test_weyl_and_seiler_simon(rng):
    p = DiscretizationParams(w=3.0, M=30)
    for s in (1.0, 0.3 + 4j, -0.2 + 2j):
        A = build_closed(s, p).A
        lhs, rhs = weyl_bound(A)
        assert lhs <= rhs + 1e-12
    n = 25
    for _ in range(20):
        k = int(rng.integers(1, 4))
        F = rng.normal(size=(n, k)) @ rng.normal(size=(k, n)) * rng.uniform(0.1, 5)
        T = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) * np.exp(-0.5 * np.arange(n))
        lhs, rhs = seiler_simon(F, T)
        assert lhs <= rhs + 1e-12
