"""Corpus benchmark: recover every image with each method and compare scores."""
from __future__ import annotations

import csv
import logging
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .blockdct import DEFAULT_N, PixelRange, strip_dc
from .errors import DcRecoverError
from .frm import BRACKET, EXHAUSTIVE, SearchConfig, recover_frm_detailed
from .io import load_pgm
from .iqa import quality
from .scan import CORNERS
from .svgplot import delta_chart
from .uso import recover_uso

log = logging.getLogger(__name__)

METHODS = ("uso", "frm-exhaustive", "frm-bracket")
METRICS = ("psnr", "ssim", "ms_ssim")


@dataclass
class BenchRecord:
    image: str
    method: str
    psnr: float
    ssim: float
    ms_ssim: float
    dc0: dict = field(default_factory=dict)  # corner value -> chosen DC of the corner block
    rate: dict = field(default_factory=dict)
    seconds: float = 0.0

    def row(self) -> list[str]:
        out = [self.image, self.method] + [fmt(getattr(self, m)) for m in METRICS]
        out += [fmt(self.dc0[c.value]) if c.value in self.dc0 else "" for c in CORNERS]
        out += [fmt(self.rate[c.value]) if c.value in self.rate else "" for c in CORNERS]
        return out


HEADER = (["image", "method"] + list(METRICS)
          + [f"dc0_{c.value}" for c in CORNERS] + [f"rate_{c.value}" for c in CORNERS])


def fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6f}"


def run_method(img: np.ndarray, method: str, delta: float = 1.0, n: int = DEFAULT_N,
               prange: PixelRange = PixelRange(), image_id: str = "") -> BenchRecord:
    t0 = time.perf_counter()
    plane = strip_dc(img, n, prange)
    dc0, rate = {}, {}
    if method == "uso":
        out = recover_uso(plane)
    elif method in ("frm-exhaustive", "frm-bracket"):
        mode = EXHAUSTIVE if method == "frm-exhaustive" else BRACKET
        res = recover_frm_detailed(plane, SearchConfig(delta=delta, mode=mode))
        out = res.image
        for c, tr in res.traces.items():
            dc0[c.value] = tr.chosen
            rate[c.value] = tr.chosen_rate
    else:
        raise ValueError(f"unknown method {method!r}")
    seconds = time.perf_counter() - t0
    q = quality(img, out, prange)
    return BenchRecord(image_id, method, q.psnr, q.ssim, q.ms_ssim, dc0, rate, seconds)


def _bench_one(args):
    path, methods, delta, n, prange = args
    try:
        img = load_pgm(path, n)
        if not np.all((img >= prange.t_min) & (img <= prange.t_max)):
            raise DcRecoverError("pixel values fall outside the configured range")
        return [run_method(img, m, delta, n, prange, Path(path).name) for m in methods], None
    except (OSError, DcRecoverError) as exc:
        return [], f"{Path(path).name}: {exc}"


def score_delta(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return a - b


@dataclass
class BenchResult:
    records: list[BenchRecord]
    skipped: list[str]

    @property
    def images(self) -> list[str]:
        return sorted({r.image for r in self.records})

    def by(self, method: str) -> dict[str, BenchRecord]:
        return {r.image: r for r in self.records if r.method == method}

    def deltas(self, method: str, metric: str, baseline: str = "uso") -> list[float]:
        a, b = self.by(method), self.by(baseline)
        return [score_delta(getattr(a[i], metric), getattr(b[i], metric))
                for i in self.images if i in a and i in b]

    def summary(self, baseline: str = "uso") -> list[dict]:
        rows = []
        methods = sorted({r.method for r in self.records} - {baseline})
        for m in methods:
            for metric in METRICS:
                d = [x for x in self.deltas(m, metric, baseline) if math.isfinite(x)]
                if not d:
                    continue
                rows.append(dict(method=m, metric=metric, mean=statistics.fmean(d),
                                 median=statistics.median(d),
                                 frac_ge=sum(x >= 0 for x in d) / len(d),
                                 frac_gt=sum(x > 0 for x in d) / len(d), n=len(d)))
        return rows


def run_bench(paths, methods=("uso", "frm-exhaustive"), delta: float = 1.0, n: int = DEFAULT_N,
              prange: PixelRange = PixelRange(), jobs: int = 1) -> BenchResult:
    paths = sorted(paths, key=lambda p: Path(p).name)
    tasks = [(str(p), tuple(methods), delta, n, prange) for p in paths]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_bench_one, tasks))
    else:
        results = [_bench_one(t) for t in tasks]
    records, skipped = [], []
    for recs, err in results:
        if err:
            log.warning("skipping %s", err)
            skipped.append(err)
        records.extend(recs)
    records.sort(key=lambda r: (r.image, METHODS.index(r.method)))
    return BenchResult(records, skipped)


def write_report(result: BenchResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for r in result.records:
            w.writerow(r.row())


def write_timings(result: BenchResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["image", "method", "seconds"])
        for r in result.records:
            w.writerow([r.image, r.method, fmt(r.seconds)])


def write_summary(result: BenchResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "metric", "mean_delta", "median_delta", "frac_ge", "frac_gt", "n"])
        for s in result.summary():
            w.writerow([s["method"], s["metric"], fmt(s["mean"]), fmt(s["median"]),
                        fmt(s["frac_ge"]), fmt(s["frac_gt"]), s["n"]])


def write_plots(result: BenchResult, outdir, baseline: str = "uso") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for m in sorted({r.method for r in result.records} - {baseline}):
        for metric in METRICS:
            d = result.deltas(m, metric, baseline)
            if not d:
                continue
            p = outdir / f"{m}_vs_{baseline}_{metric}.svg"
            p.write_text(delta_chart(d, title=f"{metric}: {m} - {baseline}", ylabel=f"{metric} difference"))
            written.append(p)
    return written
