"""Synthetic piecewise-smooth test images."""
import numpy as np


def piecewise_smooth(height: int, width: int, seed: int = 0, regions: int = 6) -> np.ndarray:
    """Smooth gradients inside random Voronoi cells plus mild texture, 8-bit."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    centres = rng.uniform([0, 0], [height, width], size=(regions, 2))
    d = (yy[..., None] - centres[:, 0]) ** 2 + (xx[..., None] - centres[:, 1]) ** 2
    label = d.argmin(axis=-1)
    base = rng.uniform(40, 215, regions)
    gy = rng.uniform(-0.25, 0.25, regions)
    gx = rng.uniform(-0.25, 0.25, regions)
    img = base[label] + gy[label] * (yy - height / 2) + gx[label] * (xx - width / 2)
    img += 6 * np.sin(xx / rng.uniform(5, 15)) * np.cos(yy / rng.uniform(5, 15))
    img += rng.normal(0, 2.0, img.shape)
    return np.clip(np.floor(img + 0.5), 0, 255).astype(np.int64)
