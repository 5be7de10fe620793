import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from spatial_restore import (ParameterError, QualityReport, ShapeError, SsimParams, add_gaussian,
                             full_report, mse, new_image, psnr, rmse, ssim, uqi)
from spatial_restore.metrics import format_number, psnr_from_mse, rmse_from_mse, ssim_map, uqi_components

from reference_table import PSNR_TOL, RMSE_TOL, ROWS

pairs = st.integers(11, 16).flatmap(
    lambda n: st.tuples(*(arrays(np.float64, (n, n), elements=st.floats(0, 1, allow_nan=False))
                          for _ in range(2))))


def test_mse_examples():
    f, g = np.array([[0.2, 0.4]]), np.array([[0.3, 0.1]])
    assert mse(f, g) == pytest.approx(0.05, abs=1e-15)
    assert mse(f, f) == 0.0
    assert rmse(f, f) == 0.0 and psnr(f, f) == math.inf


@pytest.mark.parametrize("row", ROWS, ids=[f"{r[0]}/{r[1]}" for r in ROWS])
def test_reference_table_cross_consistency(row):
    _, _, m, expected_rmse, expected_psnr = row
    assert abs(rmse_from_mse(m) - expected_rmse) <= RMSE_TOL
    assert abs(psnr_from_mse(m, 1.0) - expected_psnr) <= PSNR_TOL


def test_psnr_peak_scaling():
    assert psnr_from_mse(0.01, 1.0) == pytest.approx(20.0, abs=1e-12)
    assert psnr_from_mse(0.01, 10.0) == pytest.approx(40.0, abs=1e-12)
    with pytest.raises(ParameterError):
        psnr_from_mse(0.01, 0.0)


def test_identity_report(rng):
    f = rng.random((32, 32))
    assert full_report(f, f).values() == (0.0, 0.0, 1.0, math.inf, 1.0)
    assert full_report(f, f).csv_fields() == ["0", "0", "1", "inf", "1"]


def test_ssim_of_constant_images():
    f, g = new_image(16, 16, 0.2), new_image(16, 16, 0.8)
    c1 = 0.01 ** 2
    expected = (2 * 0.2 * 0.8 + c1) / (0.2 ** 2 + 0.8 ** 2 + c1)
    assert ssim(f, g) == pytest.approx(expected, abs=1e-12)
    assert ssim(f, g) == pytest.approx(0.4706, abs=1e-4)


def test_ssim_map_has_one_entry_per_valid_window(rng):
    f = rng.random((20, 15))
    assert ssim_map(f, f).shape == (10, 5)
    with pytest.raises(ShapeError):
        ssim(new_image(10, 20), new_image(10, 20))


def test_ssim_drops_with_noise_and_recovers_after_denoising(camera):
    from spatial_restore import gaussian_filter
    noisy = add_gaussian(camera, 0.0, 0.1, seed=1)
    assert ssim(camera, noisy) < ssim(camera, gaussian_filter(noisy, 1.0))


def test_ssim_params_validation():
    for bad in (dict(alpha=0.0), dict(k1=-0.01), dict(window=10), dict(window_sigma=0.0), dict(peak=0.0)):
        with pytest.raises(ParameterError):
            SsimParams(**bad)


def test_ssim_exponents_change_the_score(rng):
    f = rng.random((24, 24))
    g = np.clip(f + 0.1 * rng.standard_normal(f.shape), 0, 1)
    assert ssim(f, g, SsimParams(alpha=2.0, beta=2.0, gamma=2.0)) != ssim(f, g)


def test_uqi_half_scaled_example():
    # f takes 0.3 and 0.5 in equal halves: mean 0.4, variance 0.01
    f = np.array([[0.3, 0.5] * 8] * 8)
    assert f.mean() == pytest.approx(0.4) and f.var() == pytest.approx(0.01)
    assert uqi(f, 0.5 * f) == pytest.approx(0.64, abs=1e-12)


def test_uqi_conventions(rng):
    f = rng.random((8, 8))
    assert uqi(f, f) == pytest.approx(1.0, abs=1e-15)
    assert uqi(new_image(4, 4, 0.3), new_image(4, 4, 0.3)) == 1.0
    assert uqi(new_image(4, 4, 0.3), new_image(4, 4, 0.6)) == 0.0
    assert uqi(new_image(8, 8, 0.3), f) == 0.0


@settings(max_examples=50, deadline=None)
@given(pairs)
def test_uqi_component_ranges(pair):
    f, g = pair
    corr, lum, con = uqi_components(f, g)
    for value, lo in ((corr, -1.0), (lum, 0.0), (con, 0.0)):
        if not math.isnan(value):
            assert lo - 1e-12 <= value <= 1.0 + 1e-12


@settings(max_examples=50, deadline=None)
@given(pairs)
def test_metric_identities(pair):
    f, g = pair
    report = full_report(f, g)
    assert report.mse >= 0 and mse(f, g) == mse(g, f)
    if report.mse > 0:
        assert abs(report.rmse ** 2 - report.mse) <= 1e-12 * report.mse
        assert abs(psnr_from_mse(report.mse) - report.psnr) <= 1e-9
    assert -1.0 <= report.ssim <= 1.0 and -1.0 <= report.uqi <= 1.0
    assert ssim(f, g) == pytest.approx(ssim(g, f), abs=1e-12)
    assert uqi(f, g) == pytest.approx(uqi(g, f), abs=1e-12)


def test_psnr_decreases_with_noise(camera):
    values = [psnr(camera, add_gaussian(camera, 0.0, s, seed=3)) for s in (0.02, 0.05, 0.1, 0.2)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_shape_mismatch():
    for metric in (mse, rmse, psnr, uqi, ssim):
        with pytest.raises(ShapeError):
            metric(new_image(12, 12), new_image(12, 13))


def test_format_number():
    assert format_number(0.1) == "0.10000000000000001"
    assert float(format_number(1 / 3)) == 1 / 3
    assert format_number(math.inf) == "inf"
    assert QualityReport.FIELDS == ("rmse", "mse", "uqi", "psnr", "ssim")
