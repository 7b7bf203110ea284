"""Orthonormal block DCT, DC stripping/re-insertion and valid DC ranges.

Images are plain 2-D numpy arrays. Block-level quantities (DC values, DC
bounds) live on a ``(rows, cols)`` grid with one entry per N x N block.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError

DEFAULT_N = 8


@dataclass(frozen=True)
class PixelRange:
    t_min: float = 0.0
    t_max: float = 255.0

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValueError(f"t_min must be < t_max, got [{self.t_min}, {self.t_max}]")

    @property
    def width(self) -> float:
        return self.t_max - self.t_min


@dataclass(frozen=True)
class BlockGrid:
    n: int
    rows: int
    cols: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("block size must be >= 2")
        if self.rows < 1 or self.cols < 1:
            raise DimensionError("empty block grid")

    @property
    def total(self) -> int:
        return self.rows * self.cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @classmethod
    def for_image(cls, shape, n: int = DEFAULT_N) -> "BlockGrid":
        h, w = shape
        if h % n or w % n or h == 0 or w == 0:
            raise DimensionError(f"image size {w}x{h} is not a positive multiple of N={n}")
        return cls(n, h // n, w // n)


@dataclass(frozen=True)
class DcFreePlane:
    """Spatial image whose every N x N block has zero mean."""

    data: np.ndarray
    n: int = DEFAULT_N
    prange: PixelRange = PixelRange()

    @property
    def grid(self) -> BlockGrid:
        return BlockGrid.for_image(self.data.shape, self.n)

    def blocks(self) -> np.ndarray:
        """View as a (rows, cols, N, N) array."""
        return to_blocks(self.data, self.n)


@dataclass(frozen=True)
class DcBounds:
    lo: np.ndarray
    hi: np.ndarray


@lru_cache(maxsize=None)
def dct_matrix(n: int) -> np.ndarray:
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    c = np.sqrt(2.0 / n) * np.cos(np.pi * (2 * i + 1) * k / (2 * n))
    c[0, :] = 1.0 / np.sqrt(n)
    c.setflags(write=False)
    return c


def forward_block(block) -> np.ndarray:
    block = np.asarray(block, dtype=np.float64)
    c = dct_matrix(block.shape[0])
    return c @ block @ c.T


def inverse_block(coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.float64)
    c = dct_matrix(coeffs.shape[0])
    return c.T @ coeffs @ c


def to_blocks(img: np.ndarray, n: int) -> np.ndarray:
    grid = BlockGrid.for_image(img.shape, n)
    return img.reshape(grid.rows, n, grid.cols, n).swapaxes(1, 2)


def from_blocks(blocks: np.ndarray) -> np.ndarray:
    rows, cols, n, _ = blocks.shape
    return blocks.swapaxes(1, 2).reshape(rows * n, cols * n)


def forward_image(img, n: int = DEFAULT_N) -> np.ndarray:
    """Block DCT of a whole image, returned as (rows, cols, N, N)."""
    b = to_blocks(np.asarray(img, dtype=np.float64), n)
    c = dct_matrix(n)
    return np.einsum("ij,rcjk,lk->rcil", c, b, c)


def inverse_image(coeffs: np.ndarray) -> np.ndarray:
    n = coeffs.shape[-1]
    c = dct_matrix(n)
    return from_blocks(np.einsum("ji,rcjk,kl->rcil", c, coeffs, c))


def block_dcs(img, n: int = DEFAULT_N) -> np.ndarray:
    """True DC grid of an image: N times each block mean."""
    return n * to_blocks(np.asarray(img, dtype=np.float64), n).mean(axis=(2, 3))


def strip_dc(img, n: int = DEFAULT_N, prange: PixelRange = PixelRange()) -> DcFreePlane:
    img = np.asarray(img, dtype=np.float64)
    b = to_blocks(img, n)
    out = from_blocks(b - b.mean(axis=(2, 3), keepdims=True))
    return DcFreePlane(out, n, prange)


def apply_dc(plane: DcFreePlane, dcs) -> np.ndarray:
    dcs = np.asarray(dcs, dtype=np.float64)
    grid = plane.grid
    if dcs.shape != grid.shape:
        raise DimensionError(f"DC grid {dcs.shape} does not match block grid {grid.shape}")
    return from_blocks(plane.blocks() + dcs[:, :, None, None] / plane.n)


def dc_bounds(plane: DcFreePlane) -> DcBounds:
    b = plane.blocks()
    n, pr = plane.n, plane.prange
    lo = n * (pr.t_min - b.min(axis=(2, 3)))
    hi = n * (pr.t_max - b.max(axis=(2, 3)))
    return DcBounds(lo, hi)


def finalize(img, prange: PixelRange = PixelRange()) -> np.ndarray:
    """Round half away from zero, then clamp into the pixel range."""
    img = np.asarray(img, dtype=np.float64)
    rounded = np.sign(img) * np.floor(np.abs(img) + 0.5)
    return np.clip(rounded, prange.t_min, prange.t_max).astype(np.int64)
