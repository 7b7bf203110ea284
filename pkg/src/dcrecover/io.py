"""Binary PGM images and the DCF1 coefficient container."""
from __future__ import annotations

import re
import struct
from pathlib import Path

import numpy as np

from .blockdct import DEFAULT_N, BlockGrid, DcFreePlane, PixelRange, forward_image, inverse_image
from .errors import DimensionError, ParseError, UnsupportedError

MAGIC = b"DCF1"
FLAG_DC_STRIPPED = 1
_HEADER = struct.Struct("<4sIIII")

_PNM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*([^\s#]+)")


def parse_pgm(raw: bytes) -> np.ndarray:
    if raw[:2] in (b"P2", b"P1", b"P3", b"P4", b"P6"):
        raise UnsupportedError(f"only binary greyscale PGM (P5) is supported, got {raw[:2]!r}")
    if raw[:2] != b"P5":
        raise ParseError("not a PGM file")
    pos = 2
    fields = []
    for _ in range(3):
        m = _PNM_TOKEN.match(raw, pos)
        if m is None:
            raise ParseError("truncated PGM header")
        try:
            fields.append(int(m.group(1)))
        except ValueError:
            raise ParseError(f"bad PGM header field {m.group(1)!r}") from None
        pos = m.end()
    width, height, maxval = fields
    if maxval != 255:
        raise UnsupportedError(f"maxval {maxval} is not supported (need 255)")
    if pos >= len(raw) or not raw[pos:pos + 1].isspace():
        raise ParseError("missing whitespace after PGM header")
    pos += 1
    payload = raw[pos:pos + width * height]
    if len(payload) != width * height:
        raise ParseError(f"truncated PGM payload: {len(payload)} of {width * height} bytes")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).astype(np.int64)


def load_pgm(path, n: int | None = DEFAULT_N) -> np.ndarray:
    """Read an 8-bit P5 file; with ``n`` set, also require block-aligned dimensions."""
    img = parse_pgm(Path(path).read_bytes())
    if n is not None:
        BlockGrid.for_image(img.shape, n)
    return img


def encode_pgm(img) -> bytes:
    img = np.asarray(img)
    if img.min() < 0 or img.max() > 255:
        raise ValueError("PGM samples must lie in [0, 255]")
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + img.astype(np.uint8).tobytes()


def save_pgm(path, img) -> None:
    Path(path).write_bytes(encode_pgm(img))


def encode_coefficients(coeffs: np.ndarray, dc_stripped: bool) -> bytes:
    """``coeffs`` has shape (rows, cols, N, N)."""
    rows, cols, n, _ = coeffs.shape
    head = _HEADER.pack(MAGIC, cols * n, rows * n, n, FLAG_DC_STRIPPED if dc_stripped else 0)
    return head + np.ascontiguousarray(coeffs, dtype="<f8").tobytes()


def decode_coefficients(raw: bytes):
    """Returns ``(coeffs, flags)`` with coeffs of shape (rows, cols, N, N)."""
    if len(raw) < _HEADER.size:
        raise ParseError("coefficient file shorter than its header")
    magic, width, height, n, flags = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ParseError(f"bad magic {magic!r}")
    if n < 2 or width % n or height % n:
        raise DimensionError(f"{width}x{height} is not a multiple of block size {n}")
    rows, cols = height // n, width // n
    expected = rows * cols * n * n * 8
    payload = raw[_HEADER.size:]
    if len(payload) != expected:
        raise ParseError(f"payload is {len(payload)} bytes, expected {expected}")
    coeffs = np.frombuffer(payload, dtype="<f8").reshape(rows, cols, n, n).astype(np.float64)
    if flags & FLAG_DC_STRIPPED and np.any(coeffs[:, :, 0, 0] != 0.0):
        raise ParseError("DC-stripped flag set but some DC coefficients are non-zero")
    return coeffs, flags


def plane_to_coefficients(plane: DcFreePlane) -> np.ndarray:
    coeffs = forward_image(plane.data, plane.n)
    coeffs[:, :, 0, 0] = 0.0
    return coeffs


def coefficients_to_plane(coeffs: np.ndarray, prange: PixelRange = PixelRange()) -> DcFreePlane:
    coeffs = coeffs.copy()
    coeffs[:, :, 0, 0] = 0.0
    return DcFreePlane(inverse_image(coeffs), coeffs.shape[-1], prange)


def save_coefficients(path, coeffs: np.ndarray, dc_stripped: bool = True) -> None:
    Path(path).write_bytes(encode_coefficients(coeffs, dc_stripped))


def load_coefficients(path):
    return decode_coefficients(Path(path).read_bytes())
