import math

import numpy as np
import pytest

from heckezeta.errors import ParameterError, ResourceLimitError
from heckezeta.group import hull_endpoint
from heckezeta.limitset import (Cover, area_scaling, box_count, boxcount_dimension, merge_intervals,
                                omega_area, refine_cover)

A3 = hull_endpoint(3.0)


def _cover(iv):
    iv = np.array(iv, dtype=float)
    return Cover(3.0, 0.1, 0, iv, np.zeros(len(iv), bool), np.zeros(len(iv), int))


def test_stadium_area_single():
    assert abs(omega_area(_cover([[0.0, 0.5]]), 0.01) - (2 * 0.01 * 0.5 + math.pi * 1e-4)) < 1e-15


def test_stadium_area_disjoint_sum():
    a = omega_area(_cover([[0.0, 0.1], [0.5, 0.7]]), 0.01)
    assert abs(a - (0.002 + 0.004 + 2 * math.pi * 1e-4)) < 1e-15


def test_merge_intervals_pad():
    m = merge_intervals(np.array([[0.0, 1.0], [1.5, 2.0]]), pad=0.3)
    assert m.tolist() == [[0.0, 2.0]]


def test_depth_one_cover():
    c = refine_cover(3.0, A3 / 5, max_depth=1)
    assert abs(c.intervals[0, 0] + A3) < 1e-14       # gamma_1(-a) = -a
    assert np.all(c.intervals >= -A3 - 1e-14) and np.all(c.intervals <= A3 + 1e-14)


def test_cover_mirror_symmetric():
    c = refine_cover(3.0, 1e-3)
    mirror = np.sort(-c.intervals[:, ::-1], axis=0)
    assert np.allclose(np.sort(c.intervals, axis=0), mirror, atol=1e-12)


def test_cover_nesting_and_length_decrease():
    h = 1e-3
    lengths = []
    prev = None
    for k in range(1, 4):
        c = refine_cover(3.0, h, max_depth=k)
        lengths.append(c.total_length)
        if prev is not None:
            for l, r in c.intervals:
                assert np.any((prev[:, 0] <= l + 1e-13) & (prev[:, 1] >= r - 1e-13))
        prev = c.intervals
    assert lengths[0] > lengths[1] > lengths[2]


def test_cover_resolution():
    h = 1e-3
    c = refine_cover(3.0, h)
    lens = c.intervals[:, 1] - c.intervals[:, 0]
    assert np.all(lens[~c.is_tail] <= h)
    assert c.complete


def test_cover_validation():
    with pytest.raises(ParameterError):
        refine_cover(3.0, 0.2)
    with pytest.raises(ResourceLimitError):
        refine_cover(3.0, 1e-5, limit=1000)


def test_cover_csv_header():
    text = refine_cover(3.0, 1e-2).to_csv()
    assert text.splitlines()[0] == "left,right,depth,is_tail"


def test_box_count_simple():
    assert box_count(_cover([[0.0, 0.35], [0.36, 0.38]]), 0.1) == 4


def test_area_ratio_tracks_dimension():
    from heckezeta.resonances import compute_delta
    d = compute_delta(3.0)
    h = 1e-4
    r = omega_area(refine_cover(3.0, h), h) / omega_area(refine_cover(3.0, h / 2), h / 2)
    assert abs(math.log2(r) - (2 - d)) < 0.1


def test_boxcount_dimension_ordering():
    hs = np.geomspace(1e-4, 1e-2, 5)
    d3 = boxcount_dimension(3.0, hs).delta_box
    d10 = boxcount_dimension(10.0, hs).delta_box
    assert 0.5 < d3 < 1.0 and d10 < d3


def test_boxcount_needs_scales():
    with pytest.raises(ParameterError):
        boxcount_dimension(3.0, [1e-2, 5e-3, 2e-3])
