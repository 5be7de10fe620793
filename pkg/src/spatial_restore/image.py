"""Grayscale image primitives.

An image is a 2-D ``float64`` numpy array indexed ``[row, column]`` (i.e.
``[y, x]``) holding intensities nominally in ``[0, 1]``.  Functions here
never modify their inputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, RangeError, ShapeError


class Padding(str, enum.Enum):
    """How pixels outside the image are read by windowed operations."""

    REPLICATE = "replicate"
    REFLECT = "reflect"
    ZERO = "zero"


DEFAULT_PADDING = Padding.REPLICATE


def as_image(data) -> np.ndarray:
    """Validate ``data`` as a grayscale image and return it as float64."""
    img = np.asarray(data, dtype=np.float64)
    if img.ndim != 2:
        raise ShapeError(f"expected a 2-D image, got {img.ndim} dimension(s)")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ShapeError(f"image dimensions must be >= 1, got {img.shape[1]}x{img.shape[0]}")
    if not np.all(np.isfinite(img)):
        raise ParameterError("image contains non-finite pixels")
    return img


def new_image(width: int, height: int, fill: float = 0.0) -> np.ndarray:
    if width < 1 or height < 1:
        raise ShapeError(f"image dimensions must be >= 1, got {width}x{height}")
    if not math.isfinite(fill):
        raise ParameterError(f"fill value must be finite, got {fill}")
    return np.full((height, width), float(fill), dtype=np.float64)


def clip(img) -> np.ndarray:
    return np.clip(as_image(img), 0.0, 1.0)


def _resolve_index(i: int, n: int, policy: Padding) -> int | None:
    """Map a possibly out-of-range index onto ``[0, n)``; ``None`` means zero."""
    if 0 <= i < n:
        return i
    if policy is Padding.ZERO:
        return None
    if policy is Padding.REPLICATE or n == 1:
        return 0 if i < 0 else n - 1
    # mirror about the edge pixel without repeating it: -1 -> 1, n -> n-2
    period = 2 * (n - 1)
    i = abs(i) % period
    return period - i if i >= n else i


def _resolve_indices(idx: np.ndarray, n: int, policy: Padding) -> np.ndarray:
    if policy is Padding.REPLICATE or n == 1:
        return np.clip(idx, 0, n - 1)
    period = 2 * (n - 1)
    idx = np.abs(idx) % period
    return np.where(idx >= n, period - idx, idx)


def pad_lookup(img, x: int, y: int, policy: Padding | str = DEFAULT_PADDING) -> float:
    """Read pixel ``(x, y)`` where either coordinate may fall outside the image."""
    img = np.asarray(img)
    policy = Padding(policy)
    height, width = img.shape
    xi = _resolve_index(x, width, policy)
    yi = _resolve_index(y, height, policy)
    if xi is None or yi is None:
        return 0.0
    return float(img[yi, xi])


def pad(img, ry: int, rx: int, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
    """Extend ``img`` by ``ry`` rows and ``rx`` columns on each side.

    ``pad(img, ry, rx, p)[j + ry, i + rx] == pad_lookup(img, i, j, p)`` for every
    ``i`` in ``[-rx, width + rx)`` and ``j`` in ``[-ry, height + ry)``.
    """
    img = np.asarray(img, dtype=np.float64)
    policy = Padding(policy)
    if policy is Padding.ZERO:
        return np.pad(img, ((ry, ry), (rx, rx)), mode="constant")
    height, width = img.shape
    rows = _resolve_indices(np.arange(-ry, height + ry), height, policy)
    cols = _resolve_indices(np.arange(-rx, width + rx), width, policy)
    return img[np.ix_(rows, cols)]


@dataclass(frozen=True, eq=False)
class Kernel:
    """Convolution weights, shape ``(2*radius_y + 1, 2*radius_x + 1)``.

    ``weights[t + radius_y, s + radius_x]`` is the weight at offset ``(s, t)``.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.ndim != 2:
            raise ShapeError("kernel weights must be 2-D")
        if w.shape[0] % 2 == 0 or w.shape[1] % 2 == 0:
            raise ShapeError(f"kernel sides must be odd, got {w.shape[1]}x{w.shape[0]}")
        if not np.all(np.isfinite(w)):
            raise ParameterError("kernel weights must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def radius_x(self) -> int:
        return self.weights.shape[1] // 2

    @property
    def radius_y(self) -> int:
        return self.weights.shape[0] // 2


def identity_kernel() -> Kernel:
    return Kernel(np.ones((1, 1)))


def box_kernel(m: int, n: int) -> Kernel:
    """Uniform ``m`` rows by ``n`` columns averaging kernel."""
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise ParameterError(f"box kernel sides must be odd and >= 1, got {m}x{n}")
    return Kernel(np.full((m, n), 1.0 / (m * n)))


def convolve(img, kernel: Kernel, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
    """Same-size 2-D convolution.

    ``out[y, x] = sum_{s,t} K(s, t) * img(x - s, y - t)`` with out-of-range
    reads resolved by ``policy``.
    """
    img = as_image(img)
    ry, rx = kernel.radius_y, kernel.radius_x
    padded = pad(img, ry, rx, policy)
    height, width = img.shape
    out = np.zeros_like(img)
    for t in range(-ry, ry + 1):
        for s in range(-rx, rx + 1):
            w = kernel.weights[t + ry, s + rx]
            if w == 0.0:
                continue
            out += w * padded[ry - t:ry - t + height, rx - s:rx - s + width]
    return out


def histogram(img, bins: int = 256) -> np.ndarray:
    """Count pixels per bin over ``[0, 1]``; pixel ``p`` goes to ``min(bins-1, floor(p*bins))``.

    Pixels must already be in ``[0, 1]`` (see :func:`clip`).
    """
    if bins < 1:
        raise ParameterError(f"bins must be >= 1, got {bins}")
    img = as_image(img)
    if img.min() < 0.0 or img.max() > 1.0:
        raise RangeError("histogram requires pixels in [0, 1]; clip first")
    idx = np.minimum(np.floor(img * bins).astype(np.int64), bins - 1)
    return np.bincount(idx.ravel(), minlength=bins)
