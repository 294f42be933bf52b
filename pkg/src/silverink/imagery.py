"""Raster conventions, binary PNM I/O, bit packing and CRC-32.

Rasters are plain numpy arrays:

* gray plane  -- ``uint8`` array of shape ``(height, width)``
* RGB image   -- ``uint8`` array of shape ``(height, width, 3)``
* bit plane   -- ``bool`` array of shape ``(height, width)``; True means ink on

Only the binary PNM variants P4 (bitmap), P5 (graymap) and P6 (pixmap)
with maxval 255 are supported.
"""
from __future__ import annotations

import zlib

import numpy as np

from .errors import MalformedHeader, TruncatedData, UnsupportedMaxval

_WHITESPACE = b" \t\r\n\x0b\x0c"


def as_gray(plane, name="plane"):
    a = np.asarray(plane)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"{name} must be a nonempty 2-D array, got shape {a.shape}")
    if a.dtype != np.uint8:
        if a.dtype.kind not in "iub" or a.min() < 0 or a.max() > 255:
            raise ValueError(f"{name} samples must be integers in [0, 255]")
        a = a.astype(np.uint8)
    return a


def as_rgb(image, name="image"):
    a = np.asarray(image)
    if a.ndim != 3 or a.shape[2] != 3 or a.size == 0:
        raise ValueError(f"{name} must have shape (height, width, 3), got {a.shape}")
    if a.dtype != np.uint8:
        if a.dtype.kind not in "iu" or a.min() < 0 or a.max() > 255:
            raise ValueError(f"{name} samples must be integers in [0, 255]")
        a = a.astype(np.uint8)
    return a


def as_bits(bitmap, name="bitmap"):
    a = np.asarray(bitmap)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"{name} must be a nonempty 2-D array, got shape {a.shape}")
    if a.dtype != bool:
        if not np.isin(a, (0, 1)).all():
            raise ValueError(f"{name} values must be 0 or 1")
        a = a.astype(bool)
    return a


def _header_fields(data: bytes, count: int):
    """Parse ``count`` whitespace-separated header tokens after the magic.

    Returns the tokens and the offset of the first raster byte (just past the
    single whitespace byte that terminates the last token).
    """
    tokens = []
    pos = 2
    n = len(data)
    while len(tokens) < count:
        if pos >= n:
            raise MalformedHeader("header ends prematurely")
        c = data[pos:pos + 1]
        if c == b"#":
            eol = data.find(b"\n", pos)
            eol2 = data.find(b"\r", pos)
            ends = [e for e in (eol, eol2) if e >= 0]
            if not ends:
                raise MalformedHeader("unterminated comment in header")
            pos = min(ends) + 1
            continue
        if c in _WHITESPACE:
            pos += 1
            continue
        start = pos
        while pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise MalformedHeader(f"non-numeric header field {token!r}")
        tokens.append(int(token))
    if pos >= n or data[pos:pos + 1] not in _WHITESPACE:
        raise MalformedHeader("header must end with a single whitespace byte")
    return tokens, pos + 1


def read_pnm(data: bytes) -> np.ndarray:
    """Decode a binary PNM file.

    P4 yields a bool bit plane, P5 a uint8 gray plane and P6 a uint8
    ``(h, w, 3)`` image. Comments in the header are skipped.
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P4", b"P5", b"P6"):
        raise MalformedHeader(f"unsupported PNM magic {magic!r}")
    if magic == b"P4":
        (width, height), offset = _header_fields(data, 2)
    else:
        (width, height, maxval), offset = _header_fields(data, 3)
        if maxval != 255:
            raise UnsupportedMaxval(f"maxval {maxval} (only 255 is supported)")
    if width < 1 or height < 1:
        raise MalformedHeader(f"invalid dimensions {width}x{height}")

    body = np.frombuffer(data, dtype=np.uint8, offset=offset)
    if magic == b"P4":
        stride = (width + 7) // 8
        if body.size < stride * height:
            raise TruncatedData(f"expected {stride * height} raster bytes, got {body.size}")
        rows = body[: stride * height].reshape(height, stride)
        return np.unpackbits(rows, axis=1)[:, :width].astype(bool)
    channels = 1 if magic == b"P5" else 3
    need = width * height * channels
    if body.size < need:
        raise TruncatedData(f"expected {need} raster bytes, got {body.size}")
    raster = body[:need].copy()
    if channels == 1:
        return raster.reshape(height, width)
    return raster.reshape(height, width, 3)


def write_pnm(image) -> bytes:
    """Encode a raster as P4, P5 or P6 depending on its dtype and shape."""
    a = np.asarray(image)
    if a.dtype == bool:
        a = as_bits(a)
        h, w = a.shape
        # packbits zero-fills the row tail
        return b"P4\n%d %d\n" % (w, h) + np.packbits(a, axis=1).tobytes()
    if a.ndim == 3:
        a = as_rgb(a)
        h, w, _ = a.shape
        return b"P6\n%d %d\n255\n" % (w, h) + a.tobytes()
    a = as_gray(a)
    h, w = a.shape
    return b"P5\n%d %d\n255\n" % (w, h) + a.tobytes()


def load_pnm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return read_pnm(fh.read())


def save_pnm(path, image) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pnm(image))


def crc32(data: bytes) -> int:
    """Standard reflected CRC-32 (the zlib/PNG/Ethernet parameterisation)."""
    return zlib.crc32(bytes(data)) & 0xFFFFFFFF


def bytes_to_bits(data: bytes) -> np.ndarray:
    """MSB-first unpacking into a uint8 array of 0/1 values."""
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def bits_to_bytes(bits) -> bytes:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 8:
        raise ValueError("bit count must be a multiple of 8")
    return np.packbits(bits).tobytes()


def int_to_bits(value: int, width: int) -> list[int]:
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def bits_to_int(bits) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v
