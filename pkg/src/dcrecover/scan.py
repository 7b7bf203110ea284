"""Cross-boundary DC prediction and the corner-to-corner scanning engine.

A block's DC is predicted from an already-recovered neighbour by matching
the pixels on either side of their shared edge. Three pairings are tried
(straight across, and the two one-pixel diagonal shifts) and the one whose
paired differences vary least is kept.

The pattern score is a variance, so it does not see the unknown DC of either
block. The prediction therefore always has the form
``dc(neighbour) + offset(edge)`` and the offsets can be computed once per
plane. ``scan_batch`` uses this to run one scan for many initial DC values
at the same time.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .blockdct import BlockGrid, DcBounds, DcFreePlane, dc_bounds
from .errors import DimensionError


class Corner(enum.Enum):
    TOP_LEFT = "tl"
    TOP_RIGHT = "tr"
    BOTTOM_LEFT = "bl"
    BOTTOM_RIGHT = "br"

    @property
    def steps(self) -> tuple[int, int]:
        """Row and column direction of travel away from the corner."""
        return {
            Corner.TOP_LEFT: (1, 1),
            Corner.TOP_RIGHT: (1, -1),
            Corner.BOTTOM_LEFT: (-1, 1),
            Corner.BOTTOM_RIGHT: (-1, -1),
        }[self]

    def origin(self, grid: BlockGrid) -> tuple[int, int]:
        dr, dc = self.steps
        return (0 if dr > 0 else grid.rows - 1, 0 if dc > 0 else grid.cols - 1)


CORNERS = tuple(Corner)

# centre of the paired boundary differences; the median is the ML shift
# under Laplacian-distributed neighbour differences
ESTIMATORS = {"median": np.median, "mean": np.mean}


class Pattern(enum.IntEnum):
    # order doubles as the tie-break order
    STRAIGHT = 0
    DIAGONAL_DOWN = 1
    DIAGONAL_UP = 2


class Side(enum.Enum):
    """Where the reference block sits relative to the target block."""

    LEFT = "left"
    RIGHT = "right"
    ABOVE = "above"
    BELOW = "below"


@dataclass(frozen=True)
class FlowStats:
    clamped_blocks: int
    total_blocks: int

    @property
    def rate(self) -> float:
        return self.clamped_blocks / self.total_blocks


def scan_order(corner: Corner, grid: BlockGrid):
    """Row-major traversal starting at ``corner``.

    Returns a list of ``((row, col), preds)`` where ``preds`` lists the
    already-visited horizontal and/or vertical neighbours.
    """
    dr, dc = corner.steps
    rows = range(grid.rows) if dr > 0 else range(grid.rows - 1, -1, -1)
    cols = range(grid.cols) if dc > 0 else range(grid.cols - 1, -1, -1)
    order = []
    for r in rows:
        for c in cols:
            preds = []
            if 0 <= c - dc < grid.cols:
                preds.append((r, c - dc))
            if 0 <= r - dr < grid.rows:
                preds.append((r - dr, c))
            order.append(((r, c), tuple(preds)))
    return order


def boundary(ref: np.ndarray, target: np.ndarray, side: Side):
    """Pixel lines facing each other across the shared edge (works on stacks)."""
    if side is Side.LEFT:
        return ref[..., :, -1], target[..., :, 0]
    if side is Side.RIGHT:
        return ref[..., :, 0], target[..., :, -1]
    if side is Side.ABOVE:
        return ref[..., -1, :], target[..., 0, :]
    return ref[..., 0, :], target[..., -1, :]


def pattern_diffs(r: np.ndarray, q: np.ndarray):
    """Paired differences r - q for the three patterns, along the last axis."""
    return (r - q, r[..., :-1] - q[..., 1:], r[..., 1:] - q[..., :-1])


def pattern_scores(r: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.stack([d.var(axis=-1) for d in pattern_diffs(r, q)], axis=-1)


def _boundary_offset(r, q, n: int, estimator: str):
    """N * centre of the paired differences under the smoothest pattern."""
    diffs = pattern_diffs(r, q)
    choice = np.argmin(np.stack([d.var(axis=-1) for d in diffs], axis=-1), axis=-1)
    try:
        center = ESTIMATORS[estimator]
    except KeyError:
        raise ValueError(f"unknown estimator {estimator!r}") from None
    centres = np.stack([center(d, axis=-1) for d in diffs], axis=-1)
    return n * np.take_along_axis(centres, choice[..., None], axis=-1)[..., 0], choice


def predict_dc(ref_pixels, target_block, side: Side, estimator: str = "median") -> float:
    """Estimate the target's DC from a recovered neighbour.

    ``ref_pixels`` is the neighbour with its DC applied, ``target_block`` is
    DC-free.
    """
    ref_pixels = np.asarray(ref_pixels, dtype=np.float64)
    target_block = np.asarray(target_block, dtype=np.float64)
    r, q = boundary(ref_pixels, target_block, side)
    est, _ = _boundary_offset(r, q, target_block.shape[0], estimator)
    return float(est)


def selected_pattern(ref_pixels, target_block, side: Side) -> Pattern:
    r, q = boundary(np.asarray(ref_pixels, float), np.asarray(target_block, float), side)
    return Pattern(int(np.argmin(pattern_scores(r, q))))


@dataclass(frozen=True)
class EdgeOffsets:
    """DC increments along every directed edge of the block grid.

    ``right[r, c]`` is the increment from block (r, c) to (r, c+1), ``left``
    from (r, c+1) to (r, c); ``down`` and ``up`` likewise for rows.
    """

    right: np.ndarray
    left: np.ndarray
    down: np.ndarray
    up: np.ndarray

    def step(self, src: tuple[int, int], dst: tuple[int, int]) -> float:
        (r0, c0), (r1, c1) = src, dst
        if r0 == r1:
            return self.right[r0, c0] if c1 > c0 else self.left[r0, c1]
        return self.down[r0, c0] if r1 > r0 else self.up[r1, c0]


def edge_offsets(plane: DcFreePlane, estimator: str = "median") -> EdgeOffsets:
    b = plane.blocks()
    n = plane.n
    lft, rgt = b[:, :-1], b[:, 1:]
    top, bot = b[:-1, :], b[1:, :]
    return EdgeOffsets(
        right=_boundary_offset(*boundary(lft, rgt, Side.LEFT), n, estimator)[0],
        left=_boundary_offset(*boundary(rgt, lft, Side.RIGHT), n, estimator)[0],
        down=_boundary_offset(*boundary(top, bot, Side.ABOVE), n, estimator)[0],
        up=_boundary_offset(*boundary(bot, top, Side.BELOW), n, estimator)[0],
    )


def _oriented(a: np.ndarray, corner: Corner) -> np.ndarray:
    """Flip a block-grid array so that ``corner`` becomes the top-left."""
    dr, dc = corner.steps
    if dr < 0:
        a = a[::-1]
    if dc < 0:
        a = a[:, ::-1]
    return a


def scan_batch(offsets: EdgeOffsets, grid: BlockGrid, corner: Corner, dc0,
               bounds: DcBounds | None = None):
    """Run one scan for a vector of initial DC values.

    Returns ``(dcs, clamped)`` with ``dcs`` of shape (rows, cols, K) and
    ``clamped`` the per-candidate number of projected blocks. ``bounds=None``
    disables in-scan bounding.

    Blocks on one anti-diagonal (counted from the corner) only depend on the
    previous anti-diagonal, so each wavefront is processed in one step. The
    arithmetic per block is the same as visiting ``scan_order`` one by one.
    """
    dc0 = np.atleast_1d(np.asarray(dc0, dtype=np.float64))
    if bounds is not None and bounds.lo.shape != grid.shape:
        raise DimensionError("bounds do not cover the block grid")
    dr, dc = corner.steps
    # increments towards +col / +row in the corner-oriented frame
    h_step = _oriented(offsets.right if dc > 0 else offsets.left, corner)
    v_step = _oriented(offsets.down if dr > 0 else offsets.up, corner)
    if bounds is not None:
        lo = _oriented(bounds.lo, corner)
        hi = _oriented(bounds.hi, corner)

    rows, cols = grid.shape
    dcs = np.empty((rows, cols) + dc0.shape)
    clamped = np.zeros(dc0.shape, dtype=np.int64)
    for d in range(rows + cols - 1):
        i = np.arange(max(0, d - cols + 1), min(rows - 1, d) + 1)
        j = d - i
        if d == 0:
            est = dc0[None, :].copy()
        else:
            has_h, has_v = j > 0, i > 0
            est = np.empty((len(i),) + dc0.shape)
            hi_, hj = i[has_h], j[has_h] - 1
            vi, vj = i[has_v] - 1, j[has_v]
            h_est = dcs[hi_, hj] + h_step[hi_, hj][:, None]
            v_est = dcs[vi, vj] + v_step[vi, vj][:, None]
            both = has_h & has_v
            est[has_h & ~has_v] = h_est[~has_v[has_h]]
            est[has_v & ~has_h] = v_est[~has_h[has_v]]
            est[both] = (h_est[has_v[has_h]] + v_est[has_h[has_v]]) / 2
        if bounds is not None:
            proj = np.clip(est, lo[i, j][:, None], hi[i, j][:, None])
            clamped += np.count_nonzero(proj != est, axis=0)
            est = proj
        dcs[i, j] = est
    return _oriented(dcs, corner), clamped


def estimate_plane(plane: DcFreePlane, corner: Corner, dc0: float, bounding: bool = False,
                   bounds: DcBounds | None = None, offsets: EdgeOffsets | None = None,
                   estimator: str = "median"):
    """Relative DC estimation from ``corner`` with the corner block set to ``dc0``.

    With ``bounding`` every averaged estimate is projected onto its valid DC
    interval and counted in the returned FlowStats.
    """
    grid = plane.grid
    if offsets is None:
        offsets = edge_offsets(plane, estimator)
    if bounding and bounds is None:
        bounds = dc_bounds(plane)
    dcs, clamped = scan_batch(offsets, grid, corner, [dc0], bounds if bounding else None)
    return dcs[..., 0], FlowStats(int(clamped[0]), grid.total)
