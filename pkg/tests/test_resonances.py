import numpy as np
import pytest

from heckezeta.errors import BracketError, ParameterError
from heckezeta.group import character_rep, trivial_rep
from heckezeta.resonances import (compute_delta, count_zeros_box, find_zeros, leading_eigenvalue,
                                  weyl_count)
from heckezeta.transfer import DiscretizationParams
from heckezeta.zeta import ZetaQuery, zeta_eval


def test_delta_bracket_signs():
    p = DiscretizationParams(w=3.0, M=40)
    assert leading_eigenvalue(0.5001, p) > 1 > leading_eigenvalue(0.9999, p)


def test_delta_range_and_monotone():
    ds = [compute_delta(w) for w in (2.5, 3.0, 4.0, 6.0, 10.0)]
    assert all(0.5 < d < 1 for d in ds)
    assert all(a > b for a, b in zip(ds, ds[1:]))


def test_delta_stable_in_M():
    assert abs(compute_delta(3.0, M=40, check_stability=False)
               - compute_delta(3.0, M=60, check_stability=False)) < 1e-10


def test_delta_tolerance_floor():
    with pytest.raises(ParameterError):
        compute_delta(3.0, tol=1e-14)


def test_bracket_failure(monkeypatch):
    import heckezeta.resonances as res
    monkeypatch.setattr(res, "DELTA_BRACKET", (0.9, 0.95))
    res._delta_cache.clear()
    with pytest.raises(BracketError):
        res.compute_delta(3.0, tol=1e-9)
    res._delta_cache.clear()


def test_no_zeros_right_of_half_small_box():
    assert count_zeros_box(3.0, trivial_rep(), (0.55, 1.2, 0.1, 8.0)) == 0


def test_box_validation():
    with pytest.raises(ParameterError):
        count_zeros_box(3.0, trivial_rep(), (0.5, 1.0, 0.0, 3.0))
    with pytest.raises(ParameterError):
        count_zeros_box(3.0, trivial_rep(), (1.0, 0.5, 1.0, 3.0))


def test_find_zeros_consistent_with_count():
    box = (-0.25, 1.0, 0.1, 7.0)
    zs, cells = find_zeros(3.0, trivial_rep(), box)
    n = count_zeros_box(3.0, trivial_rep(), box)
    assert sum(z.multiplicity for z in zs) == n
    for z in zs:
        assert z.residual < 1e-8
        assert abs(zeta_eval(ZetaQuery(3.0, z.s, M=60))) < 1e-8


def test_conjugate_zeros_trivial_rep():
    zs, _ = find_zeros(3.0, trivial_rep(), (-0.25, 1.0, 2.0, 4.0))
    for z in zs:
        assert abs(zeta_eval(ZetaQuery(3.0, z.s.conjugate(), M=60))) < 1e-8


def test_weyl_count_monotone():
    rpt = weyl_count(3.0, trivial_rep(), -0.25, [2.0, 4.0, 6.0, 8.0])
    assert np.all(np.diff(rpt.N) >= 0)
    assert rpt.N[-1] == 2 * count_zeros_box(3.0, trivial_rep(), (-0.25, 2.0, 0.1, 8.0))


def test_weyl_count_monotone_in_sigma():
    a = weyl_count(3.0, trivial_rep(), -0.25, [4.0, 6.0])
    b = weyl_count(3.0, trivial_rep(), 0.2, [4.0, 6.0])
    assert np.all(a.N >= b.N)
