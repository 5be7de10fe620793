"""Grayscale denoising benchmark: noise models, spatial filters and quality metrics."""

__version__ = "0.1.0"

from .errors import ParameterError, PgmParseError, RangeError, RestoreError, ShapeError
from .image import (Kernel, Padding, box_kernel, clip, convolve, histogram, identity_kernel,
                    new_image, pad_lookup)
from .pgm import load_pgm, read_pgm, save_pgm, write_pgm
from .noise import (GaussianNoise, PoissonNoise, SaltPepperNoise, SpeckleNoise, add_gaussian,
                    add_poisson, add_salt_pepper, add_speckle, degrade, gaussian_pdf, poisson_pmf)
from .filters import (BilateralFilter, GaussianFilter, MeanFilter, MedianFilter, bilateral_filter,
                      gaussian_filter, gaussian_kernel, mean_filter, median_filter)
from .metrics import QualityReport, SsimParams, full_report, mse, psnr, rmse, ssim, uqi

__all__ = [
    "ParameterError", "PgmParseError", "RangeError", "RestoreError", "ShapeError",
    "Kernel", "Padding", "box_kernel", "clip", "convolve", "histogram", "identity_kernel",
    "new_image", "pad_lookup",
    "load_pgm", "read_pgm", "save_pgm", "write_pgm",
    "GaussianNoise", "PoissonNoise", "SaltPepperNoise", "SpeckleNoise", "add_gaussian",
    "add_poisson", "add_salt_pepper", "add_speckle", "degrade", "gaussian_pdf", "poisson_pmf",
    "BilateralFilter", "GaussianFilter", "MeanFilter", "MedianFilter", "bilateral_filter",
    "gaussian_filter", "gaussian_kernel", "mean_filter", "median_filter",
    "QualityReport", "SsimParams", "full_report", "mse", "psnr", "rmse", "ssim", "uqi",
]
