"""Flow-rate minimisation: bounded scans and a search over the corner block's DC.

For a trial value of the corner DC, a bounded scan projects every estimate
onto its valid interval; the fraction of projected blocks is the flow rate.
The corner DC that minimises it is used for the final scan. Near the true
value the rate tends to be smallest, so this acts as an estimator for the
otherwise unknown absolute brightness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .blockdct import DcBounds, DcFreePlane, apply_dc, dc_bounds, finalize
from .errors import EmptyRange
from .scan import CORNERS, Corner, EdgeOffsets, edge_offsets, scan_batch

EXHAUSTIVE = "exhaustive"
BRACKET = "bracket"

_BATCH = 512


@dataclass(frozen=True)
class SearchConfig:
    delta: float = 1.0
    mode: str = EXHAUSTIVE
    corners: tuple[Corner, ...] = CORNERS
    estimator: str = "median"

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.mode not in (EXHAUSTIVE, BRACKET):
            raise ValueError(f"unknown search mode {self.mode!r}")


@dataclass
class SearchTrace:
    candidates: list[float]
    rates: list[float]
    chosen: float
    tie_left: float
    tie_right: float
    chosen_rate: float
    lo: float
    hi: float

    @property
    def evaluations(self) -> int:
        return len(self.candidates)

    @property
    def min_rate(self) -> float:
        return min(self.rates)


def tie_midpoint(xs, fs):
    """Midpoint of the leftmost and rightmost global minimisers."""
    xs = np.asarray(xs, dtype=np.float64)
    fs = np.asarray(fs, dtype=np.float64)
    at_min = xs[fs == fs.min()]
    left, right = float(at_min.min()), float(at_min.max())
    return (left + right) / 2, left, right


def grid_candidates(lo: float, hi: float, delta: float) -> np.ndarray:
    _check_interval(lo, hi)
    k = int(math.floor((hi - lo) / delta))
    xs = lo + delta * np.arange(k + 1)
    if xs[-1] < hi:
        xs = np.append(xs, hi)
    return xs


def bracket_probe(f: Callable[[float], float], lo: float, hi: float, delta: float):
    """Three-point interval halving on a (nearly) unimodal objective.

    Keeps the half whose two probes carry the smaller rates; equal endpoint
    rates keep the left half. The first round always probes left, middle and
    right, even when the interval is already narrower than ``delta``.
    Returns the evaluated points and values in evaluation order.
    """
    _check_interval(lo, hi)
    xs, fs = [], []

    def ev(x):
        xs.append(x)
        fs.append(f(x))
        return fs[-1]

    f_lo = ev(lo)
    if hi == lo:
        return xs, fs
    f_hi = ev(hi)
    while True:
        mid = (lo + hi) / 2
        ev(mid)
        f_mid = fs[-1]
        if f_lo <= f_hi:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo <= delta:
            break
    return xs, fs


def bracket_budget(width: float, delta: float) -> int:
    steps = math.ceil(math.log2(width / delta)) if width > delta else 0
    return 2 * steps + 3


def _check_interval(lo, hi):
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise EmptyRange(f"invalid DC interval [{lo}, {hi}]")


class FlowObjective:
    """Flow rate of a bounded scan as a function of the corner DC."""

    def __init__(self, plane: DcFreePlane, corner: Corner, bounds: DcBounds | None = None,
                 offsets: EdgeOffsets | None = None, estimator: str = "median"):
        self.plane = plane
        self.corner = corner
        self.grid = plane.grid
        self.bounds = bounds if bounds is not None else dc_bounds(plane)
        self.offsets = offsets if offsets is not None else edge_offsets(plane, estimator)

    @property
    def interval(self) -> tuple[float, float]:
        pos = self.corner.origin(self.grid)
        return float(self.bounds.lo[pos]), float(self.bounds.hi[pos])

    def rates(self, dc0s) -> np.ndarray:
        dc0s = np.atleast_1d(np.asarray(dc0s, dtype=np.float64))
        out = np.empty(dc0s.shape)
        for i in range(0, len(dc0s), _BATCH):
            chunk = dc0s[i:i + _BATCH]
            _, clamped = scan_batch(self.offsets, self.grid, self.corner, chunk, self.bounds)
            out[i:i + _BATCH] = clamped / self.grid.total
        return out

    def __call__(self, dc0: float) -> float:
        return float(self.rates([dc0])[0])

    def dcs(self, dc0: float) -> np.ndarray:
        dcs, _ = scan_batch(self.offsets, self.grid, self.corner, [dc0], self.bounds)
        return dcs[..., 0]


def flow_rate(plane: DcFreePlane, corner: Corner, dc0: float, bounds: DcBounds | None = None) -> float:
    return FlowObjective(plane, corner, bounds)(dc0)


def _trace(obj: FlowObjective, xs, fs, lo, hi) -> SearchTrace:
    chosen, left, right = tie_midpoint(xs, fs)
    lookup = dict(zip(xs, fs))
    chosen_rate = lookup[chosen] if chosen in lookup else obj(chosen)
    return SearchTrace(list(map(float, xs)), list(map(float, fs)), chosen, left, right,
                       float(chosen_rate), lo, hi)


def search_exhaustive(plane: DcFreePlane, corner: Corner, cfg: SearchConfig = SearchConfig(),
                      objective: FlowObjective | None = None) -> SearchTrace:
    obj = objective or FlowObjective(plane, corner, estimator=cfg.estimator)
    lo, hi = obj.interval
    xs = grid_candidates(lo, hi, cfg.delta)
    return _trace(obj, xs, obj.rates(xs), lo, hi)


def search_bracket(plane: DcFreePlane, corner: Corner, cfg: SearchConfig = SearchConfig(mode=BRACKET),
                   objective: FlowObjective | None = None) -> SearchTrace:
    obj = objective or FlowObjective(plane, corner, estimator=cfg.estimator)
    lo, hi = obj.interval
    xs, fs = bracket_probe(obj, lo, hi, cfg.delta)
    return _trace(obj, xs, fs, lo, hi)


def search(plane: DcFreePlane, corner: Corner, cfg: SearchConfig,
           objective: FlowObjective | None = None) -> SearchTrace:
    fn = search_exhaustive if cfg.mode == EXHAUSTIVE else search_bracket
    return fn(plane, corner, cfg, objective)


@dataclass
class FrmResult:
    image: np.ndarray
    averaged: np.ndarray
    scans: dict[Corner, np.ndarray] = field(default_factory=dict)
    traces: dict[Corner, SearchTrace] = field(default_factory=dict)
    dcs: dict[Corner, np.ndarray] = field(default_factory=dict)


def recover_frm_detailed(plane: DcFreePlane, cfg: SearchConfig = SearchConfig()) -> FrmResult:
    bounds = dc_bounds(plane)
    offsets = edge_offsets(plane, cfg.estimator)
    res = FrmResult(None, None)
    for corner in cfg.corners:
        obj = FlowObjective(plane, corner, bounds, offsets)
        trace = search(plane, corner, cfg, obj)
        dcs = obj.dcs(trace.chosen)
        res.traces[corner] = trace
        res.dcs[corner] = dcs
        res.scans[corner] = apply_dc(plane, dcs)
    res.averaged = np.mean([res.scans[c] for c in cfg.corners], axis=0)
    res.image = finalize(res.averaged, plane.prange)
    return res


def recover_frm(plane: DcFreePlane, cfg: SearchConfig = SearchConfig()) -> np.ndarray:
    return recover_frm_detailed(plane, cfg).image
