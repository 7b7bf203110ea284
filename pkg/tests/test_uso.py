import itertools

import numpy as np
import pytest

from dcrecover.blockdct import DcBounds, dc_bounds, finalize, strip_dc
from dcrecover.scan import CORNERS, estimate_plane
from dcrecover.uso import (adjust_range, global_adjustment, postprocess, recover_uso,
                           recover_uso_detailed)


def test_global_adjustment_single_block():
    b = DcBounds(np.array([[0.0]]), np.array([[2040.0]]))
    assert global_adjustment(np.zeros((1, 1)), b, 8) == 127.5


def test_global_adjustment_intersection():
    # per-block adjustment intervals [10, 100] and [-50, 40]
    b = DcBounds(np.array([[80.0, -400.0]]), np.array([[800.0, 320.0]]))
    ar = adjust_range(np.zeros((1, 2)), b, 8)
    assert (ar.global_lo, ar.global_hi) == (10.0, 40.0)
    assert global_adjustment(np.zeros((1, 2)), b, 8) == 25.0


def test_global_adjustment_empty_intersection():
    b = DcBounds(np.array([[800.0, -400.0]]), np.array([[1600.0, 0.0]]))
    ar = adjust_range(np.zeros((1, 2)), b, 8)
    assert ar.global_lo > ar.global_hi
    assert global_adjustment(np.zeros((1, 2)), b, 8) == (100.0 + 0.0) / 2


def test_global_adjustment_dense_sweep(camera_crop):
    plane = strip_dc(camera_crop)
    bounds = dc_bounds(plane)
    for corner in CORNERS:
        dcs, _ = estimate_plane(plane, corner, 0.0)
        s = global_adjustment(dcs, bounds, 8)

        def inside(shift):
            d = dcs + 8 * shift
            return int(np.sum((d >= bounds.lo - 1e-9) & (d <= bounds.hi + 1e-9)))

        sweep = max(inside(x) for x in np.linspace(-300, 300, 6001))
        ar = adjust_range(dcs, bounds, 8)
        if ar.global_lo <= ar.global_hi:
            assert inside(s) == plane.grid.total == sweep
        else:
            assert s == pytest.approx((ar.global_lo + ar.global_hi) / 2)


def test_postprocess_scales_wide_range():
    img = np.array([[-88.6, 0.0, 303.0]])
    out = postprocess(img)
    np.testing.assert_allclose(out, [[0.0, 88.6 * 255 / 391.6, 255.0]])


def test_postprocess_shift():
    np.testing.assert_allclose(postprocess(np.array([[-10.0, 200.0]])), [[0.0, 210.0]])
    np.testing.assert_allclose(postprocess(np.array([[50.0, 265.0]])), [[40.0, 255.0]])


def test_postprocess_identity():
    img = np.array([[0.0, 17.5, 255.0]])
    np.testing.assert_array_equal(postprocess(img), img)


def test_postprocess_exact_width_is_shift():
    # dynamic range equal to t_max - t_min is not scaled
    np.testing.assert_allclose(postprocess(np.array([[-5.0, 250.0]])), [[0.0, 255.0]])


def test_recover_constant_image():
    out = recover_uso(strip_dc(np.full((32, 32), 40)))
    assert np.all(out == 128)


def test_corner_averaging_order_invariant(camera_crop):
    res = recover_uso_detailed(strip_dc(camera_crop))
    ref = finalize(postprocess(res.averaged))
    for perm in itertools.permutations(CORNERS):
        avg = sum(res.scans[c] for c in perm) / 4
        np.testing.assert_allclose(avg, res.averaged, atol=1e-9)
        np.testing.assert_array_equal(finalize(postprocess(avg)), ref)


def test_output_in_range(camera):
    out = recover_uso(strip_dc(camera))
    assert out.min() >= 0 and out.max() <= 255
    assert out.dtype.kind == "i"


def test_flat_boundaries_recover_up_to_shift():
    # same AC pattern in every block, borders all at the same level
    tile = np.zeros((8, 8))
    tile[2:6, 2:6] = 20
    img = np.tile(tile, (4, 5)) + 60
    res = recover_uso_detailed(strip_dc(img))
    diff = res.averaged - img
    assert np.ptp(diff) < 1e-9


def test_intermediate_scans_exposed(camera):
    res = recover_uso_detailed(strip_dc(camera))
    assert set(res.scans) == set(CORNERS)
    assert all(s.shape == camera.shape for s in res.scans.values())
