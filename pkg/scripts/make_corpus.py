"""Build the bundled test corpus of 8-bit greyscale PGM images.

Sources are the sample photographs shipped inside scikit-image and
scikit-learn (public-domain / freely licensed). Each is converted to luma,
cropped to a block-aligned window and written to data/corpus/.

    python scripts/make_corpus.py [--out data/corpus] [--synthetic K]
"""
import argparse
import os
from pathlib import Path

import numpy as np
import skimage.data
import skimage.io
from sklearn.datasets import load_sample_image

from dcrecover.io import save_pgm
from dcrecover.synthetic import piecewise_smooth

SKIMAGE_DIR = Path(os.path.dirname(skimage.data.__file__))

# name -> (source, top, left, height, width); crop sizes are multiples of 8
CROPS = {
    "astronaut": ("astronaut.png", 0, 0, 512, 512),
    "brick": ("brick.png", 0, 0, 256, 384),
    "camera": ("camera.png", 0, 0, 512, 512),
    "cell": ("cell.png", 100, 80, 384, 384),
    "chelsea": ("chelsea.png", 0, 0, 296, 448),
    "china_a": ("china.jpg", 0, 0, 424, 640),
    "china_b": ("china.jpg", 100, 200, 256, 384),
    "clock": ("clock_motion.png", 0, 0, 296, 400),
    "coffee": ("coffee.png", 0, 0, 400, 600),
    "coins": ("coins.png", 0, 0, 296, 384),
    "flower_a": ("flower.jpg", 0, 0, 424, 640),
    "flower_b": ("flower.jpg", 120, 160, 256, 384),
    "grass": ("grass.png", 0, 0, 256, 384),
    "gravel": ("gravel.png", 0, 0, 256, 384),
    "hubble": ("hubble_deep_field.jpg", 200, 300, 384, 384),
    "ihc": ("ihc.png", 0, 0, 384, 512),
    "moon": ("moon.png", 0, 0, 512, 512),
    "motorcycle_a": ("motorcycle_left.png", 0, 0, 496, 736),
    "motorcycle_b": ("motorcycle_right.png", 100, 200, 256, 384),
    "retina_a": ("retina.jpg", 300, 300, 512, 512),
    "retina_b": ("retina.jpg", 600, 500, 256, 384),
    "rocket": ("rocket.jpg", 0, 0, 424, 640),
}


def luma(img: np.ndarray) -> np.ndarray:
    if img.ndim == 2:
        return img.astype(np.int64)
    rgb = img[..., :3].astype(np.float64)
    y = rgb @ np.array([0.299, 0.587, 0.114])
    return np.clip(np.floor(y + 0.5), 0, 255).astype(np.int64)


def read_source(name: str) -> np.ndarray:
    if name in ("china.jpg", "flower.jpg"):
        return load_sample_image(name)
    return skimage.io.imread(SKIMAGE_DIR / name)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data/corpus")
    ap.add_argument("--synthetic", type=int, default=0, help="also write K synthetic images")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, (name, (src, top, left, h, w)) in enumerate(sorted(CROPS.items())):
        img = luma(read_source(src))[top:top + h, left:left + w]
        assert img.shape == (h, w), (name, img.shape)
        save_pgm(out / f"{i:02d}_{name}.pgm", img)
    for k in range(args.synthetic):
        save_pgm(out / f"syn_{k:02d}.pgm", piecewise_smooth(256, 256, seed=k))
    print(f"wrote {len(CROPS) + args.synthetic} images to {out}")


if __name__ == "__main__":
    main()
