"""Full-reference quality metrics: PSNR, SSIM and 5-scale MS-SSIM.

SSIM uses an 11x11 Gaussian window (sigma 1.5) evaluated at valid window
positions only, K1 = 0.01, K2 = 0.03 and a dynamic range of t_max - t_min.
MS-SSIM downsamples by 2x2 averaging between scales.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .blockdct import PixelRange
from .errors import DimensionError, TooSmall

WIN = 11
SIGMA = 1.5
K1, K2 = 0.01, 0.03
MS_WEIGHTS = (0.0448, 0.2856, 0.3001, 0.2363, 0.1333)


@dataclass(frozen=True)
class QualityReport:
    psnr: float
    ssim: float
    ms_ssim: float

    def csv(self) -> str:
        p = "inf" if np.isinf(self.psnr) else f"{self.psnr:.6f}"
        return f"{p},{self.ssim:.6f},{self.ms_ssim:.6f}"


def _pair(ref, test):
    ref = np.asarray(ref, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if ref.shape != test.shape:
        raise DimensionError(f"shape mismatch: {ref.shape} vs {test.shape}")
    return ref, test


def psnr(ref, test, prange: PixelRange = PixelRange()) -> float:
    ref, test = _pair(ref, test)
    mse = np.mean((ref - test) ** 2)
    if mse == 0:
        return float("inf")
    return float(10 * np.log10(prange.width ** 2 / mse))


@lru_cache(maxsize=None)
def gaussian_window(size: int = WIN, sigma: float = SIGMA) -> np.ndarray:
    x = np.arange(size) - (size - 1) / 2
    g = np.exp(-(x ** 2) / (2 * sigma ** 2))
    g /= g.sum()
    g.setflags(write=False)
    return g


def _filter_valid(img: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Separable correlation with ``g`` over valid positions only."""
    k = len(g)
    v = np.lib.stride_tricks.sliding_window_view(img, k, axis=0) @ g
    return np.lib.stride_tricks.sliding_window_view(v, k, axis=1) @ g


def _ssim_terms(x, y, data_range):
    g = gaussian_window()
    c1 = (K1 * data_range) ** 2
    c2 = (K2 * data_range) ** 2
    mx, my = _filter_valid(x, g), _filter_valid(y, g)
    sxx = _filter_valid(x * x, g) - mx * mx
    syy = _filter_valid(y * y, g) - my * my
    sxy = _filter_valid(x * y, g) - mx * my
    lum = (2 * mx * my + c1) / (mx * mx + my * my + c1)
    cs = (2 * sxy + c2) / (sxx + syy + c2)
    return lum, cs


def ssim(ref, test, prange: PixelRange = PixelRange()) -> float:
    ref, test = _pair(ref, test)
    if min(ref.shape) < WIN:
        raise TooSmall(f"SSIM needs at least {WIN}x{WIN} pixels, got {ref.shape}")
    lum, cs = _ssim_terms(ref, test, prange.width)
    return float(np.mean(lum * cs))


def downsample(img: np.ndarray) -> np.ndarray:
    """2x2 box average then decimation; odd edges are mirrored."""
    h, w = img.shape
    img = np.pad(img, ((0, h % 2), (0, w % 2)), mode="symmetric")
    return 0.25 * (img[0::2, 0::2] + img[1::2, 0::2] + img[0::2, 1::2] + img[1::2, 1::2])


def ms_ssim(ref, test, prange: PixelRange = PixelRange()) -> float:
    ref, test = _pair(ref, test)
    scales = len(MS_WEIGHTS)
    need = WIN * 2 ** (scales - 1)
    if min(ref.shape) < need:
        raise TooSmall(f"MS-SSIM needs at least {need}x{need} pixels, got {ref.shape}")
    out = 1.0
    for s, w in enumerate(MS_WEIGHTS):
        lum, cs = _ssim_terms(ref, test, prange.width)
        if s == scales - 1:
            term = np.mean(lum * cs)
        else:
            term = np.mean(cs)
            ref, test = downsample(ref), downsample(test)
        # negative contrast-structure terms would make the product undefined
        out *= max(float(term), 0.0) ** w
    return out


def quality(ref, test, prange: PixelRange = PixelRange()) -> QualityReport:
    return QualityReport(psnr(ref, test, prange), ssim(ref, test, prange), ms_ssim(ref, test, prange))
