"""Restoration filters: arithmetic mean, median, Gaussian and bilateral.

All filters return an image of the input's size.  Pixels outside the image
are read according to a :class:`~spatial_restore.image.Padding` policy,
replicate by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Optional, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ParameterError
from .image import DEFAULT_PADDING, Kernel, Padding, as_image, pad


def _check_window(m: int, n: int) -> None:
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise ParameterError(f"window sides must be odd and >= 1 (even windows have no center), got {m}x{n}")


def _check_gaussian(sigma: float, radius: int, name: str = "sigma") -> None:
    if not sigma > 0:
        raise ParameterError(f"{name} must be > 0, got {sigma}")
    if radius < 1:
        raise ParameterError(f"radius must be >= 1, got {radius}")


def default_radius(sigma: float) -> int:
    """``ceil(3 * sigma)``, at least 1."""
    return max(1, math.ceil(3.0 * sigma))


def _windows(img: np.ndarray, m: int, n: int, policy) -> np.ndarray:
    padded = pad(img, m // 2, n // 2, policy)
    return sliding_window_view(padded, (m, n))


def mean_filter(img, m: int = 3, n: int = 3, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
    """Replace each pixel by the mean of its ``m`` x ``n`` neighborhood."""
    _check_window(m, n)
    img = as_image(img)
    return _windows(img, m, n, policy).mean(axis=(-2, -1))


def median_filter(img, m: int = 3, n: int = 3, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
    """Replace each pixel by the median of its ``m`` x ``n`` neighborhood.

    Windows have an odd pixel count, so the median is always one of the
    window's own values.
    """
    _check_window(m, n)
    img = as_image(img)
    return np.median(_windows(img, m, n, policy), axis=(-2, -1))


def _gaussian_1d(sigma: float, radius: int) -> np.ndarray:
    s = np.arange(-radius, radius + 1, dtype=np.float64)
    g = np.exp(-(s * s) / (2.0 * sigma * sigma))
    return g / g.sum()


def gaussian_kernel(sigma: float = 1.0, radius: Optional[int] = None) -> Kernel:
    """Isotropic Gaussian weights on ``[-radius, radius]^2``, normalized to sum to 1."""
    if radius is None:
        radius = default_radius(sigma)
    _check_gaussian(sigma, radius)
    s = np.arange(-radius, radius + 1, dtype=np.float64)
    d2 = s[:, None] ** 2 + s[None, :] ** 2
    g = np.exp(-d2 / (2.0 * sigma * sigma))
    return Kernel(g / g.sum())


def gaussian_filter(img, sigma: float = 1.0, radius: Optional[int] = None,
                    policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
    """Convolve with :func:`gaussian_kernel`, done as two 1-D passes.

    The padded image is built once, so the separable result equals the 2-D
    convolution for every padding policy.
    """
    if radius is None:
        radius = default_radius(sigma)
    _check_gaussian(sigma, radius)
    img = as_image(img)
    g = _gaussian_1d(sigma, radius)
    padded = pad(img, radius, radius, policy)
    height, width = img.shape
    rows = np.zeros((padded.shape[0], width))
    for k, w in enumerate(g):
        rows += w * padded[:, k:k + width]
    out = np.zeros((height, width))
    for k, w in enumerate(g):
        out += w * rows[k:k + height, :]
    return out


def bilateral_filter(img, sigma_s: float = 2.0, sigma_r: float = 0.1, radius: Optional[int] = None,
                     policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
    """Edge-preserving average weighted by spatial distance and intensity difference.

    ``out(p) = sum_q Gs(|p-q|) Gr(|I_p-I_q|) I_q / sum_q Gs(|p-q|) Gr(|I_p-I_q|)``
    over the square window of half-width ``radius``, with unnormalized
    ``G(d) = exp(-d^2 / (2 sigma^2))``.
    """
    if radius is None:
        radius = default_radius(sigma_s)
    _check_gaussian(sigma_s, radius, "sigma_s")
    if not sigma_r > 0:
        raise ParameterError(f"sigma_r must be > 0, got {sigma_r}")
    img = as_image(img)
    padded = pad(img, radius, radius, policy)
    height, width = img.shape
    num = np.zeros_like(img)
    norm = np.zeros_like(img)
    inv_2s2 = 1.0 / (2.0 * sigma_s * sigma_s)
    inv_2r2 = 1.0 / (2.0 * sigma_r * sigma_r)
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            q = padded[radius + dy:radius + dy + height, radius + dx:radius + dx + width]
            w = math.exp(-(dx * dx + dy * dy) * inv_2s2) * np.exp(-((img - q) ** 2) * inv_2r2)
            num += w * q
            norm += w
    return num / norm


@dataclass(frozen=True)
class MeanFilter:
    m: int = 3
    n: int = 3
    label: ClassVar[str] = "mean"
    title: ClassVar[str] = "Average Filter"

    def __post_init__(self):
        _check_window(self.m, self.n)

    def apply(self, img, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
        return mean_filter(img, self.m, self.n, policy)


@dataclass(frozen=True)
class MedianFilter:
    m: int = 3
    n: int = 3
    label: ClassVar[str] = "median"
    title: ClassVar[str] = "Median Filter"

    def __post_init__(self):
        _check_window(self.m, self.n)

    def apply(self, img, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
        return median_filter(img, self.m, self.n, policy)


@dataclass(frozen=True)
class GaussianFilter:
    sigma: float = 1.0
    radius: Optional[int] = None
    label: ClassVar[str] = "gaussian"
    title: ClassVar[str] = "Gaussian Filter"

    def __post_init__(self):
        if self.radius is None and self.sigma > 0:
            object.__setattr__(self, "radius", default_radius(self.sigma))
        _check_gaussian(self.sigma, self.radius if self.radius is not None else 0)

    def apply(self, img, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
        return gaussian_filter(img, self.sigma, self.radius, policy)


@dataclass(frozen=True)
class BilateralFilter:
    sigma_s: float = 2.0
    sigma_r: float = 0.1
    radius: Optional[int] = None
    label: ClassVar[str] = "bilateral"
    title: ClassVar[str] = "Bilateral Filter"

    def __post_init__(self):
        if self.radius is None and self.sigma_s > 0:
            object.__setattr__(self, "radius", default_radius(self.sigma_s))
        _check_gaussian(self.sigma_s, self.radius if self.radius is not None else 0, "sigma_s")
        if not self.sigma_r > 0:
            raise ParameterError(f"sigma_r must be > 0, got {self.sigma_r}")

    def apply(self, img, policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
        return bilateral_filter(img, self.sigma_s, self.sigma_r, self.radius, policy)


FilterSpec = Union[MeanFilter, MedianFilter, GaussianFilter, BilateralFilter]


def default_filters() -> list[FilterSpec]:
    """The four filters in the order of the comparison table."""
    return [MeanFilter(), GaussianFilter(), MedianFilter(), BilateralFilter()]
