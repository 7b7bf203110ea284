"""Baseline recovery: relative scans, global brightness fit, averaging, post-processing."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blockdct import DcBounds, DcFreePlane, PixelRange, apply_dc, dc_bounds, finalize
from .scan import CORNERS, Corner, edge_offsets, estimate_plane


@dataclass(frozen=True)
class AdjustRange:
    lo: np.ndarray  # per-block, intensity units
    hi: np.ndarray

    @property
    def global_lo(self) -> float:
        return float(self.lo.max())

    @property
    def global_hi(self) -> float:
        return float(self.hi.min())

    @property
    def midpoint(self) -> float:
        return (self.global_lo + self.global_hi) / 2


def adjust_range(dcs, bounds: DcBounds, n: int) -> AdjustRange:
    dcs = np.asarray(dcs, dtype=np.float64)
    return AdjustRange((bounds.lo - dcs) / n, (bounds.hi - dcs) / n)


def global_adjustment(dcs, bounds: DcBounds, n: int) -> float:
    """Brightness shift that centres the image inside the common valid interval.

    The midpoint is returned even if the per-block intervals do not intersect.
    """
    return adjust_range(dcs, bounds, n).midpoint


def postprocess(img, prange: PixelRange = PixelRange()) -> np.ndarray:
    img = np.asarray(img, dtype=np.float64)
    lo, hi = img.min(), img.max()
    if hi - lo > prange.width:
        return prange.t_min + (img - lo) * (prange.width / (hi - lo))
    if lo < prange.t_min:
        return img + (prange.t_min - lo)
    if hi > prange.t_max:
        return img - (hi - prange.t_max)
    return img.copy()


@dataclass
class UsoResult:
    image: np.ndarray
    averaged: np.ndarray
    scans: dict[Corner, np.ndarray] = field(default_factory=dict)
    shifts: dict[Corner, float] = field(default_factory=dict)


def recover_uso_detailed(plane: DcFreePlane, estimator: str = "median") -> UsoResult:
    bounds = dc_bounds(plane)
    offsets = edge_offsets(plane, estimator)
    scans, shifts = {}, {}
    for corner in CORNERS:
        dcs, _ = estimate_plane(plane, corner, 0.0, offsets=offsets)
        shift = global_adjustment(dcs, bounds, plane.n)
        scans[corner] = apply_dc(plane, dcs) + shift
        shifts[corner] = shift
    averaged = np.mean([scans[c] for c in CORNERS], axis=0)
    image = finalize(postprocess(averaged, plane.prange), plane.prange)
    return UsoResult(image, averaged, scans, shifts)


def recover_uso(plane: DcFreePlane, estimator: str = "median") -> np.ndarray:
    return recover_uso_detailed(plane, estimator).image
