"""Noise generators, their reference densities, and the blur-plus-noise degradation.

Every generator is a pure function of ``(image, parameters, seed)``: the
random draw for a pixel depends only on the seed and the pixel's row-major
index (see :mod:`spatial_restore.rng`).  Outputs are clipped to ``[0, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Union

import numpy as np
from scipy.special import gammaln

from . import rng
from .errors import ParameterError, RangeError
from .image import Kernel, Padding, DEFAULT_PADDING, as_image, convolve

# one RNG stream per model, so equal seeds give unrelated fields
_STREAM_GAUSSIAN = 1
_STREAM_POISSON = 2
_STREAM_SALT_PEPPER = 3
_STREAM_SPECKLE = 4


def _key(seed: int, stream: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ParameterError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed < 2**64:
        raise ParameterError(f"seed must fit in 64 unsigned bits, got {seed}")
    return rng.derive_key(int(seed), stream)


def _pixel_index(img: np.ndarray) -> np.ndarray:
    return np.arange(img.size, dtype=np.uint64).reshape(img.shape)


def gaussian_variates(shape, mean: float, sigma: float, seed: int) -> np.ndarray:
    """The unclipped additive field used by :func:`add_gaussian`."""
    if not sigma > 0:
        raise ParameterError(f"Gaussian sigma must be > 0, got {sigma}")
    index = np.arange(int(np.prod(shape)), dtype=np.uint64).reshape(shape)
    return mean + sigma * rng.normal(_key(seed, _STREAM_GAUSSIAN), index)


def add_gaussian(img, mean: float = 0.0, sigma: float = 0.1, seed: int = 0) -> np.ndarray:
    img = as_image(img)
    return np.clip(img + gaussian_variates(img.shape, mean, sigma, seed), 0.0, 1.0)


def poisson_counts(img, peak: float, seed: int) -> np.ndarray:
    """Photon counts drawn with rate ``pixel * peak``, before normalization."""
    if not peak > 0:
        raise ParameterError(f"Poisson peak must be > 0, got {peak}")
    img = as_image(img)
    # rates above 1 * peak are legal (blurred inputs can overshoot by an ulp)
    if img.min() < 0.0:
        raise RangeError("Poisson noise requires non-negative pixels")
    return rng.poisson(_key(seed, _STREAM_POISSON), _pixel_index(img), img * peak)


def add_poisson(img, peak: float = 255.0, seed: int = 0) -> np.ndarray:
    return np.clip(poisson_counts(img, peak, seed) / peak, 0.0, 1.0)


def add_salt_pepper(img, p_a: float = 0.025, p_b: float = 0.025, a: float = 0.0,
                    b: float = 1.0, seed: int = 0) -> np.ndarray:
    """Set each pixel to ``a`` (pepper) with probability ``p_a``, to ``b`` (salt)
    with probability ``p_b``, or leave it alone.

    One uniform ``u`` is drawn per pixel: ``u < p_a`` gives pepper,
    ``p_a <= u < p_a + p_b`` gives salt.
    """
    _check_salt_pepper(p_a, p_b, a, b)
    img = as_image(img)
    u = rng.uniform(_key(seed, _STREAM_SALT_PEPPER), _pixel_index(img))
    out = np.where(u < p_a, a, np.where(u < p_a + p_b, b, img))
    return np.clip(out, 0.0, 1.0)


def _check_salt_pepper(p_a, p_b, a, b):
    if p_a < 0 or p_b < 0:
        raise ParameterError(f"salt/pepper probabilities must be >= 0, got {p_a}, {p_b}")
    if p_a + p_b > 1:
        raise ParameterError(f"salt/pepper probability sum must be <= 1, got {p_a + p_b}")
    if not 0.0 <= a < b <= 1.0:
        raise ParameterError(f"need 0 <= a < b <= 1 for pepper/salt values, got a={a}, b={b}")


def add_speckle(img, variance: float = 0.04, seed: int = 0) -> np.ndarray:
    """``j = i + mu * i`` with ``mu`` uniform on ``[-sqrt(3v), sqrt(3v)]`` (mean 0, variance v)."""
    if not variance >= 0:
        raise ParameterError(f"speckle variance must be >= 0, got {variance}")
    img = as_image(img)
    half_width = math.sqrt(3.0 * variance)
    u = rng.uniform(_key(seed, _STREAM_SPECKLE), _pixel_index(img))
    mu = (2.0 * u - 1.0) * half_width
    return np.clip(img + mu * img, 0.0, 1.0)


def gaussian_pdf(z, mean: float = 0.0, sigma: float = 1.0):
    if not sigma > 0:
        raise ParameterError(f"sigma must be > 0, got {sigma}")
    z = np.asarray(z, dtype=np.float64)
    return np.exp(-((z - mean) ** 2) / (2.0 * sigma**2)) / (math.sqrt(2.0 * math.pi) * sigma)


def poisson_pmf(x, lam: float):
    """``lam**x * exp(-lam) / x!`` evaluated in log space."""
    if not lam > 0:
        raise ParameterError(f"lambda must be > 0, got {lam}")
    x = np.asarray(x)
    if np.any(x < 0) or np.any(x != np.floor(x)):
        raise ParameterError("x must be a non-negative integer")
    x = x.astype(np.float64)
    return np.exp(x * math.log(lam) - lam - gammaln(x + 1.0))


@dataclass(frozen=True)
class GaussianNoise:
    mean: float = 0.0
    sigma: float = 0.1
    label: ClassVar[str] = "gaussian"
    title: ClassVar[str] = "Gaussian"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterError(f"Gaussian sigma must be > 0, got {self.sigma}")

    def apply(self, img, seed: int) -> np.ndarray:
        return add_gaussian(img, self.mean, self.sigma, seed)


@dataclass(frozen=True)
class PoissonNoise:
    peak: float = 255.0
    label: ClassVar[str] = "poisson"
    title: ClassVar[str] = "Poisson"

    def __post_init__(self):
        if not self.peak > 0:
            raise ParameterError(f"Poisson peak must be > 0, got {self.peak}")

    def apply(self, img, seed: int) -> np.ndarray:
        return add_poisson(img, self.peak, seed)


@dataclass(frozen=True)
class SaltPepperNoise:
    p_a: float = 0.025
    p_b: float = 0.025
    a: float = 0.0
    b: float = 1.0
    label: ClassVar[str] = "sp"
    title: ClassVar[str] = "Salt & Pepper"

    def __post_init__(self):
        _check_salt_pepper(self.p_a, self.p_b, self.a, self.b)

    @classmethod
    def from_amount(cls, amount: float) -> "SaltPepperNoise":
        """Total corrupted fraction ``amount``, split evenly between salt and pepper."""
        return cls(p_a=amount / 2.0, p_b=amount / 2.0)

    def apply(self, img, seed: int) -> np.ndarray:
        return add_salt_pepper(img, self.p_a, self.p_b, self.a, self.b, seed)


@dataclass(frozen=True)
class SpeckleNoise:
    variance: float = 0.04
    label: ClassVar[str] = "speckle"
    title: ClassVar[str] = "Speckle"

    def __post_init__(self):
        if not self.variance >= 0:
            raise ParameterError(f"speckle variance must be >= 0, got {self.variance}")

    def apply(self, img, seed: int) -> np.ndarray:
        return add_speckle(img, self.variance, seed)


NoiseSpec = Union[GaussianNoise, PoissonNoise, SaltPepperNoise, SpeckleNoise]


def default_noises() -> list[NoiseSpec]:
    return [GaussianNoise(), PoissonNoise(), SaltPepperNoise(), SpeckleNoise()]


def degrade(img, h: Kernel, noise: NoiseSpec, seed: int,
            policy: Padding | str = DEFAULT_PADDING) -> np.ndarray:
    """Blur with ``h``, then corrupt with ``noise`` (clipped once, at the end)."""
    return noise.apply(convolve(img, h, policy), seed)
