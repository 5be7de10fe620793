"""Full-reference image quality metrics: MSE, RMSE, PSNR, SSIM and UQI."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError, ShapeError
from .image import as_image


def _pair(f, g) -> tuple[np.ndarray, np.ndarray]:
    f, g = as_image(f), as_image(g)
    if f.shape != g.shape:
        raise ShapeError(f"image shapes differ: {f.shape[1]}x{f.shape[0]} vs {g.shape[1]}x{g.shape[0]}")
    return f, g


def mse(f, g) -> float:
    """Mean squared difference, summed exactly (``math.fsum``) so it is order independent."""
    f, g = _pair(f, g)
    d = f - g
    return math.fsum((d * d).ravel().tolist()) / d.size


def rmse_from_mse(value: float) -> float:
    return math.sqrt(value)


def psnr_from_mse(value: float, peak: float = 1.0) -> float:
    if not peak > 0:
        raise ParameterError(f"peak must be > 0, got {peak}")
    if value == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / value)


def rmse(f, g) -> float:
    return rmse_from_mse(mse(f, g))


def psnr(f, g, peak: float = 1.0) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images.

    ``peak`` is the largest representable intensity, 1.0 for normalized images.
    """
    return psnr_from_mse(mse(f, g), peak)


@dataclass(frozen=True)
class SsimParams:
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    k1: float = 0.01
    k2: float = 0.03
    window: int = 11
    window_sigma: float = 1.5
    peak: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "k1", "k2", "window_sigma", "peak"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"SSIM {name} must be > 0, got {getattr(self, name)}")
        if self.window < 1 or self.window % 2 == 0:
            raise ParameterError(f"SSIM window must be odd and >= 1, got {self.window}")


def _valid_smooth(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    k = taps.size
    h, w = x.shape[0] - k + 1, x.shape[1] - k + 1
    rows = np.zeros((x.shape[0], w))
    for i, t in enumerate(taps):
        rows += t * x[:, i:i + w]
    out = np.zeros((h, w))
    for i, t in enumerate(taps):
        out += t * rows[i:i + h, :]
    return out


def _signed_power(x: np.ndarray, p: float) -> np.ndarray:
    if p == 1.0:
        return x
    return np.sign(x) * np.abs(x) ** p


def ssim_map(f, g, params: Optional[SsimParams] = None) -> np.ndarray:
    """Per-window SSIM over every fully contained Gaussian window."""
    params = params or SsimParams()
    f, g = _pair(f, g)
    if min(f.shape) < params.window:
        raise ShapeError(f"image {f.shape[1]}x{f.shape[0]} is smaller than the "
                         f"{params.window}x{params.window} SSIM window")
    r = params.window // 2
    s = np.arange(-r, r + 1, dtype=np.float64)
    taps = np.exp(-(s * s) / (2.0 * params.window_sigma ** 2))
    taps /= taps.sum()

    c1 = (params.k1 * params.peak) ** 2
    c2 = (params.k2 * params.peak) ** 2
    c3 = c2 / 2.0

    mu_f = _valid_smooth(f, taps)
    mu_g = _valid_smooth(g, taps)
    var_f = np.maximum(_valid_smooth(f * f, taps) - mu_f * mu_f, 0.0)
    var_g = np.maximum(_valid_smooth(g * g, taps) - mu_g * mu_g, 0.0)
    # sqrt(v*v) == v exactly, which keeps ssim(f, f) at exactly 1
    sd_fg = np.sqrt(var_f * var_g)
    cov = np.clip(_valid_smooth(f * g, taps) - mu_f * mu_g, -sd_fg, sd_fg)

    luminance = (2.0 * mu_f * mu_g + c1) / (mu_f * mu_f + mu_g * mu_g + c1)
    contrast = (2.0 * sd_fg + c2) / (var_f + var_g + c2)
    structure = (cov + c3) / (sd_fg + c3)
    return (_signed_power(luminance, params.alpha)
            * _signed_power(contrast, params.beta)
            * _signed_power(structure, params.gamma))


def ssim(f, g, params: Optional[SsimParams] = None) -> float:
    return float(np.clip(ssim_map(f, g, params).mean(), -1.0, 1.0))


def uqi_components(f, g) -> tuple[float, float, float]:
    """Correlation, luminance and contrast factors of the global quality index.

    Undefined factors (zero variance or zero means) are returned as ``nan``.
    """
    f, g = _pair(f, g)
    mf, mg = f.mean(), g.mean()
    df, dg = f - mf, g - mg
    vf, vg, cov = (df * df).mean(), (dg * dg).mean(), (df * dg).mean()
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = cov / math.sqrt(vf * vg) if vf * vg > 0 else math.nan
        lum = 2.0 * mf * mg / (mf * mf + mg * mg) if mf * mf + mg * mg > 0 else math.nan
        con = 2.0 * math.sqrt(vf * vg) / (vf + vg) if vf + vg > 0 else math.nan
    return float(corr), float(lum), float(con)


def uqi(f, g) -> float:
    """Global universal quality index (correlation x luminance x contrast).

    Evaluated as ``[2 cov / (vf + vg)] * [2 mf mg / (mf^2 + mg^2)]``, which
    equals the three-factor product but has no 0/0 when one variance is zero.
    Two constant images score 1 if equal and 0 otherwise.
    """
    f, g = _pair(f, g)
    f_const = f.max() == f.min()
    g_const = g.max() == g.min()
    if f_const and g_const:
        return 1.0 if f.flat[0] == g.flat[0] else 0.0
    if f_const or g_const:
        return 0.0
    mf, mg = f.mean(), g.mean()
    df, dg = f - mf, g - mg
    vf, vg, cov = (df * df).mean(), (dg * dg).mean(), (df * dg).mean()
    structure = 2.0 * cov / (vf + vg)
    lum_den = mf * mf + mg * mg
    luminance = 2.0 * mf * mg / lum_den if lum_den > 0 else 1.0
    return float(np.clip(structure * luminance, -1.0, 1.0))


@dataclass(frozen=True)
class QualityReport:
    """Five metrics for one (reference, test) pair, in comparison-table order."""

    rmse: float
    mse: float
    uqi: float
    psnr: float
    ssim: float

    FIELDS = ("rmse", "mse", "uqi", "psnr", "ssim")

    def values(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in self.FIELDS)

    def csv_fields(self) -> list[str]:
        return [format_number(v) for v in self.values()]


def format_number(value: float) -> str:
    """17 significant digits (round-trips any double); ``inf`` for infinity."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.17g}"


def full_report(f, g, peak: float = 1.0, ssim_params: Optional[SsimParams] = None) -> QualityReport:
    m = mse(f, g)
    return QualityReport(
        rmse=rmse_from_mse(m),
        mse=m,
        uqi=uqi(f, g),
        psnr=psnr_from_mse(m, peak),
        ssim=ssim(f, g, ssim_params),
    )
