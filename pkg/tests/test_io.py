import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcrecover.blockdct import apply_dc, block_dcs, finalize, strip_dc
from dcrecover.errors import DimensionError, ParseError, UnsupportedError
from dcrecover.io import (MAGIC, coefficients_to_plane, decode_coefficients, encode_coefficients,
                          encode_pgm, load_pgm, parse_pgm, plane_to_coefficients, save_pgm)


def test_minimal_pgm():
    raw = b"P5 8 8 255\n" + bytes(range(64))
    img = parse_pgm(raw)
    assert img.shape == (8, 8) and img[7, 7] == 63


def test_pgm_header_comments():
    raw = b"P5\n# made by hand\n16 8\n# max\n255\n" + bytes(128)
    assert parse_pgm(raw).shape == (8, 16)


@pytest.mark.parametrize("raw,exc", [
    (b"P2 8 8 255\n" + b"0 " * 64, UnsupportedError),
    (b"P5 8 8 65535\n" + bytes(128), UnsupportedError),
    (b"XX 8 8 255\n", ParseError),
    (b"P5 8 8 255\n" + bytes(10), ParseError),
    (b"P5 8 8", ParseError),
    (b"P5 8 x 255\n", ParseError),
])
def test_pgm_errors(raw, exc):
    with pytest.raises(exc):
        parse_pgm(raw)


def test_load_pgm_block_alignment(tmp_path):
    p = tmp_path / "odd.pgm"
    p.write_bytes(b"P5 12 8 255\n" + bytes(96))
    with pytest.raises(DimensionError):
        load_pgm(p)
    assert load_pgm(p, n=None).shape == (8, 12)


@settings(max_examples=25)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_pgm_round_trip(rows, cols, seed):
    img = np.random.default_rng(seed).integers(0, 256, (rows * 8, cols * 8))
    raw = encode_pgm(img)
    assert raw.startswith(b"P5\n%d %d\n255\n" % (cols * 8, rows * 8))
    assert encode_pgm(parse_pgm(raw)) == raw
    np.testing.assert_array_equal(parse_pgm(raw), img)


def test_save_pgm_file_round_trip(tmp_path, rng):
    img = rng.integers(0, 256, (16, 24))
    save_pgm(tmp_path / "a.pgm", img)
    raw = (tmp_path / "a.pgm").read_bytes()
    np.testing.assert_array_equal(load_pgm(tmp_path / "a.pgm"), img)
    save_pgm(tmp_path / "b.pgm", load_pgm(tmp_path / "a.pgm"))
    assert (tmp_path / "b.pgm").read_bytes() == raw


def test_coefficient_layout(rng):
    img = rng.integers(0, 256, (16, 24))
    coeffs = plane_to_coefficients(strip_dc(img))
    raw = encode_coefficients(coeffs, dc_stripped=True)
    magic, w, h, n, flags = struct.unpack_from("<4sIIII", raw)
    assert (magic, w, h, n, flags) == (MAGIC, 24, 16, 8, 1)
    assert len(raw) == 20 + 2 * 3 * 64 * 8
    # block (0, 1), coefficient (0, 1)
    off = 20 + (1 * 64 + 1) * 8
    assert struct.unpack_from("<d", raw, off)[0] == coeffs[0, 1, 0, 1]
    assert np.all(coeffs[:, :, 0, 0] == 0.0)


def test_constant_image_payload_zero():
    coeffs = plane_to_coefficients(strip_dc(np.full((16, 16), 200)))
    raw = encode_coefficients(coeffs, True)
    assert raw[20:] == bytes(len(raw) - 20)


def test_coefficient_errors(rng):
    coeffs = plane_to_coefficients(strip_dc(rng.integers(0, 256, (8, 8))))
    raw = encode_coefficients(coeffs, True)
    with pytest.raises(ParseError):
        decode_coefficients(b"DCF2" + raw[4:])
    with pytest.raises(ParseError):
        decode_coefficients(raw[:-8])
    with pytest.raises(ParseError):
        decode_coefficients(raw[:10])
    bad = coeffs.copy()
    bad[0, 0, 0, 0] = 1.0
    with pytest.raises(ParseError):
        decode_coefficients(encode_coefficients(bad, True))
    c, flags = decode_coefficients(encode_coefficients(bad, False))
    assert flags == 0 and c[0, 0, 0, 0] == 1.0


@settings(max_examples=30)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_coefficient_round_trip_bit_exact(rows, cols, seed):
    img = np.random.default_rng(seed).integers(0, 256, (rows * 8, cols * 8))
    raw = encode_coefficients(plane_to_coefficients(strip_dc(img)), True)
    coeffs, _ = decode_coefficients(raw)
    assert encode_coefficients(coeffs, True) == raw
    plane = coefficients_to_plane(coeffs)
    np.testing.assert_allclose(plane.data, strip_dc(img).data, atol=1e-9)
    np.testing.assert_array_equal(finalize(apply_dc(plane, block_dcs(img))), img)
