"""PSNR and mean SSIM for judging marked images."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from .errors import DimensionMismatch, TooSmall

PEAK = 255.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
C1 = (0.01 * PEAK) ** 2
C2 = (0.03 * PEAK) ** 2


@dataclass(frozen=True)
class QualityReport:
    psnr: float
    mssim: float
    payload_bpp: float

    def as_dict(self) -> dict:
        return {"psnr_db": self.psnr, "mssim": self.mssim, "payload_bpp": self.payload_bpp}


def _pair(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return a.astype(np.float64), b.astype(np.float64)


def _psnr_from_mse(mse: float) -> float:
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB; +inf for identical planes."""
    a, b = _pair(a, b)
    return _psnr_from_mse(float(np.mean((a - b) ** 2)))


def rgb_psnr(a, b) -> float:
    """PSNR with the MSE pooled over all three channels."""
    a, b = _pair(a, b)
    if a.ndim != 3 or a.shape[2] != 3:
        raise ValueError("rgb_psnr expects (height, width, 3) images")
    return _psnr_from_mse(float(np.mean((a - b) ** 2)))


def channel_psnr(a, b) -> tuple[float, float, float]:
    a, b = _pair(a, b)
    return tuple(_psnr_from_mse(float(np.mean((a[..., c] - b[..., c]) ** 2))) for c in range(3))


def _gaussian_window() -> np.ndarray:
    r = np.arange(SSIM_WINDOW) - SSIM_WINDOW // 2
    g = np.exp(-(r * r) / (2 * SSIM_SIGMA ** 2))
    return g / g.sum()


def _valid_filter(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    # separable Gaussian, then keep only positions where the whole window fits
    y = correlate1d(correlate1d(x, g, axis=0, mode="constant"), g, axis=1, mode="constant")
    r = SSIM_WINDOW // 2
    return y[r:-r, r:-r]


def ssim_map(a, b) -> np.ndarray:
    a, b = _pair(a, b)
    if a.ndim != 2:
        raise ValueError("ssim expects single-channel planes")
    if min(a.shape) < SSIM_WINDOW:
        raise TooSmall(f"planes must be at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {a.shape}")
    g = _gaussian_window()
    mu_a = _valid_filter(a, g)
    mu_b = _valid_filter(b, g)
    var_a = _valid_filter(a * a, g) - mu_a * mu_a
    var_b = _valid_filter(b * b, g) - mu_b * mu_b
    cov = _valid_filter(a * b, g) - mu_a * mu_b
    num = (2 * mu_a * mu_b + C1) * (2 * cov + C2)
    den = (mu_a * mu_a + mu_b * mu_b + C1) * (var_a + var_b + C2)
    return num / den


def mssim(a, b) -> float:
    """Mean SSIM over all full 11x11 Gaussian (sigma 1.5) windows."""
    return float(np.mean(ssim_map(a, b)))


def rgb_mssim(a, b) -> float:
    """Mean of the per-channel MSSIM values."""
    a, b = _pair(a, b)
    return float(np.mean([mssim(a[..., c], b[..., c]) for c in range(3)]))


def report(original, marked, payload_bits: int = 0) -> QualityReport:
    """PSNR/MSSIM of a plane or RGB image plus payload density in bits per pixel."""
    original = np.asarray(original)
    h, w = original.shape[:2]
    if original.ndim == 3:
        return QualityReport(rgb_psnr(original, marked), rgb_mssim(original, marked), payload_bits / (h * w))
    return QualityReport(psnr(original, marked), mssim(original, marked), payload_bits / (h * w))
