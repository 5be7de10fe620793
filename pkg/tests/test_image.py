import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from spatial_restore import (Kernel, ParameterError, RangeError, ShapeError, box_kernel, clip, convolve,
                             histogram, identity_kernel, mean_filter, new_image, pad_lookup)
from spatial_restore.image import pad

import oracles
from conftest import POLICIES

small_images = arrays(np.float64, st.tuples(st.integers(1, 7), st.integers(1, 7)),
                      elements=st.floats(0, 1, allow_nan=False))


def test_new_image():
    np.testing.assert_array_equal(new_image(2, 2, 0.0), np.zeros((2, 2)))
    img = new_image(1, 1, 0.5)
    assert img.shape == (1, 1) and img[0, 0] == 0.5
    with pytest.raises(ShapeError):
        new_image(0, 3, 0.0)
    with pytest.raises(ParameterError):
        new_image(2, 2, float("nan"))


def test_clip():
    out = clip(np.array([[1.3, -0.2, 0.4]]))
    np.testing.assert_array_equal(out, [[1.0, 0.0, 0.4]])


@pytest.mark.parametrize("policy, x, expected", [
    ("replicate", -1, "a"), ("zero", -1, None), ("reflect", -1, "b"),
    ("replicate", 3, "c"), ("reflect", 3, "b"), ("reflect", -2, "c"), ("reflect", 1, "b"),
])
def test_pad_lookup_examples(policy, x, expected):
    row = np.array([[0.1, 0.2, 0.3]])
    value = {"a": 0.1, "b": 0.2, "c": 0.3, None: 0.0}[expected]
    assert pad_lookup(row, x, 0, policy) == value


@pytest.mark.parametrize("policy", POLICIES)
@pytest.mark.parametrize("h, w", [(1, 1), (1, 4), (3, 2), (5, 5)])
def test_pad_matches_pad_lookup_and_oracle(policy, h, w, rng):
    img = rng.random((h, w))
    r = 7
    padded = pad(img, r, r, policy)
    for j in range(-r, h + r):
        for i in range(-r, w + r):
            expected = oracles.pixel(img.tolist(), i, j, policy)
            assert pad_lookup(img, i, j, policy) == expected
            assert padded[j + r, i + r] == expected


def test_replicate_of_constant_is_constant():
    img = new_image(4, 3, 0.7)
    for x in range(-20, 20, 3):
        for y in range(-20, 20, 5):
            assert pad_lookup(img, x, y, "replicate") == 0.7


def test_kernel_validation():
    with pytest.raises(ShapeError):
        Kernel(np.ones((2, 3)))
    k = Kernel(np.ones((3, 5)))
    assert (k.radius_x, k.radius_y) == (2, 1)
    assert abs(box_kernel(5, 3).weights.sum() - 1.0) < 1e-12


def test_convolve_identity(rng):
    img = rng.random((9, 6))
    out = convolve(img, identity_kernel())
    assert np.max(np.abs(out - img)) <= 1e-15


def test_convolve_impulse_response():
    weights = np.arange(1.0, 16.0).reshape(3, 5)  # asymmetric, so orientation shows
    img = np.zeros((9, 11))
    x0, y0 = 5, 4
    img[y0, x0] = 1.0
    out = convolve(img, Kernel(weights), "zero")
    # out(x, y) = K(x - x0, y - y0)
    for t in range(-1, 2):
        for s in range(-2, 3):
            assert out[y0 + t, x0 + s] == weights[t + 1, s + 2]
    assert out.sum() == weights.sum()


@pytest.mark.parametrize("policy", POLICIES)
def test_convolve_matches_oracle(policy, rng):
    img = rng.random((6, 7))
    weights = rng.normal(size=(3, 5))
    expected = np.array(oracles.convolve(img.tolist(), weights.tolist(), policy))
    np.testing.assert_allclose(convolve(img, Kernel(weights), policy), expected, atol=1e-12, rtol=0)


@pytest.mark.parametrize("policy", POLICIES)
def test_box_kernel_equals_mean_filter(policy, rng):
    img = rng.random((10, 8))
    np.testing.assert_allclose(convolve(img, box_kernel(3, 3), policy), mean_filter(img, 3, 3, policy),
                               atol=1e-12, rtol=0)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_convolve_is_linear(data):
    shape = data.draw(st.tuples(st.integers(1, 6), st.integers(1, 6)))
    elems = st.floats(-1, 1, allow_nan=False)
    f = data.draw(arrays(np.float64, shape, elements=elems))
    g = data.draw(arrays(np.float64, shape, elements=elems))
    k = Kernel(data.draw(arrays(np.float64, (3, 3), elements=elems)))
    a, b = data.draw(elems), data.draw(elems)
    lhs = convolve(a * f + b * g, k)
    rhs = a * convolve(f, k) + b * convolve(g, k)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12, rtol=0)


def test_histogram_examples():
    h = histogram(new_image(4, 4, 0.5), 256)
    assert h[128] == 16 and h.sum() == 16
    np.testing.assert_array_equal(histogram(np.array([[0.0, 1.0]]), 2), [1, 1])
    with pytest.raises(ParameterError):
        histogram(new_image(1, 1), 0)
    with pytest.raises(RangeError):
        histogram(np.array([[1.5]]), 4)


def test_histogram_ramp_matches_enumeration():
    ramp = (np.arange(256) / 255.0).reshape(16, 16)
    counts = [0] * 256
    for v in ramp.ravel().tolist():
        counts[min(255, int(v * 256))] += 1
    h = histogram(ramp, 256)
    np.testing.assert_array_equal(h, counts)
    assert set(h.tolist()) <= {0, 1, 2} and h.sum() == 256


@settings(max_examples=50, deadline=None)
@given(small_images, st.integers(1, 300))
def test_histogram_counts_sum_to_pixels(img, bins):
    assert histogram(img, bins).sum() == img.size
