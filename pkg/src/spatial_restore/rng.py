"""Counter-based random variates keyed by (seed, stream, pixel index).

Every variate is a pure function of its key and position, so a noise field
can be generated in any order, or in pieces, and still come out bit-identical.
Two SplitMix64 levels are used: output ``pixel_index`` of the stream seeded
by ``key`` seeds a per-pixel stream, whose output ``draw`` is the variate.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

_MAX_ATTEMPTS = 10_000

# Below this rate Poisson variates come from CDF inversion, above from PTRS.
INVERSION_MAX_LAMBDA = 30.0


def _mix(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * _M1
    z = z ^ (z >> np.uint64(27))
    z = z * _M2
    return z ^ (z >> np.uint64(31))


def derive_key(seed: int, stream: int) -> int:
    """Combine a 64-bit seed and a stream number into a generator key."""
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    s = np.array([(stream * 0xD1B54A32D192ED03) & _MASK64], dtype=np.uint64)
    return int(_mix(np.array([seed], dtype=np.uint64) ^ _mix(s))[0])


def uniform(key: int, index: np.ndarray, draw: int = 0) -> np.ndarray:
    """Uniform doubles in ``[0, 1)``, one per entry of ``index``."""
    index = np.asarray(index, dtype=np.uint64)
    pixel_seed = _mix(np.uint64(key) + (index + np.uint64(1)) * _GAMMA)
    z = _mix(pixel_seed + np.uint64(((draw + 1) * int(_GAMMA)) & _MASK64))
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def normal(key: int, index: np.ndarray) -> np.ndarray:
    """Standard normal variates by Box-Muller (draws 0 and 1 of each index)."""
    u1 = 1.0 - uniform(key, index, 0)  # (0, 1], keeps the log finite
    u2 = uniform(key, index, 1)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def poisson(key: int, index: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Poisson counts with per-entry rate ``lam`` (returned as float64)."""
    index = np.asarray(index, dtype=np.uint64)
    lam = np.broadcast_to(np.asarray(lam, dtype=np.float64), index.shape)
    out = np.zeros(index.shape, dtype=np.float64)
    small = (lam > 0) & (lam <= INVERSION_MAX_LAMBDA)
    large = lam > INVERSION_MAX_LAMBDA
    if small.any():
        out[small] = _poisson_inversion(key, index[small], lam[small])
    if large.any():
        out[large] = _poisson_ptrs(key, index[large], lam[large])
    return out


def _poisson_inversion(key: int, index: np.ndarray, lam: np.ndarray) -> np.ndarray:
    u = uniform(key, index, 0)
    k = np.zeros_like(lam)
    p = np.exp(-lam)
    cdf = p.copy()
    pending = u > cdf
    step = 0
    # the tail beyond lam + 60 sqrt(lam) is far below double resolution
    limit = int(INVERSION_MAX_LAMBDA + 60 * np.sqrt(INVERSION_MAX_LAMBDA))
    while pending.any() and step < limit:
        step += 1
        p = np.where(pending, p * lam / step, p)
        cdf = np.where(pending, cdf + p, cdf)
        k = np.where(pending, step, k)
        pending &= u > cdf
    return k


def _poisson_ptrs(key: int, index: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Hormann's transformed rejection with squeeze (PTRS), valid for lam >= 10."""
    slam = np.sqrt(lam)
    loglam = np.log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    invalpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2.0)

    out = np.empty_like(lam)
    pending = np.arange(lam.size)
    for attempt in range(_MAX_ATTEMPTS):
        if pending.size == 0:
            return out
        idx = index[pending]
        u = uniform(key, idx, 2 * attempt) - 0.5
        v = uniform(key, idx, 2 * attempt + 1)
        us = 0.5 - np.abs(u)
        a_, b_, lam_ = a[pending], b[pending], lam[pending]
        k = np.floor((2.0 * a_ / us + b_) * u + lam_ + 0.43)

        accept = (us >= 0.07) & (v <= vr[pending])
        reject = (k < 0) | ((us < 0.013) & (v > us))
        with np.errstate(divide="ignore", invalid="ignore"):
            lhs = np.log(v) + np.log(invalpha[pending]) - np.log(a_ / (us * us) + b_)
            rhs = -lam_ + k * loglam[pending] - gammaln(np.maximum(k, 0.0) + 1.0)
        accept |= ~reject & (lhs <= rhs)

        out[pending[accept]] = k[accept]
        pending = pending[~accept]
    raise RuntimeError("Poisson rejection sampler failed to converge")
