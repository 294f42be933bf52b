"""Lossless bi-level coding in the style of a JBIG2 generic region.

Pixels are coded in raster order by the MQ coder, each conditioned on a
16-pixel template-0 context built from already-coded neighbours. Typical
prediction is off, there is no skip bitmap, and the four adaptive pixels
sit at their nominal positions. Neighbours outside the bitmap read as 0.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import CorruptStream, RegionTooLarge
from .imagery import as_bits
from .mq import MqDecoder, MqEncoder, check_marker_conventions

TEMPLATE_ID = 0
REGION_MAGIC = b"BGR1"
_REGION_HEADER = struct.Struct(">4sIIBI")

# (dx, dy, context bit) for the 16 template-0 pixels; the adaptive pixels
# are AT1=(3,-1) -> bit 4, AT2=(-3,-1) -> bit 10, AT3=(2,-2) -> bit 11,
# AT4=(-2,-2) -> bit 15.
TEMPLATE0 = (
    (-1, 0, 0), (-2, 0, 1), (-3, 0, 2), (-4, 0, 3),
    (3, -1, 4), (2, -1, 5), (1, -1, 6), (0, -1, 7), (-1, -1, 8), (-2, -1, 9),
    (-3, -1, 10),
    (2, -2, 11), (1, -2, 12), (0, -2, 13), (-1, -2, 14), (-2, -2, 15),
)


@dataclass(frozen=True)
class CodedRegion:
    width: int
    height: int
    data: bytes
    template_id: int = TEMPLATE_ID

    def to_bytes(self) -> bytes:
        return (
            _REGION_HEADER.pack(REGION_MAGIC, self.width, self.height, self.template_id, len(self.data))
            + self.data
        )

    @classmethod
    def from_bytes(cls, blob: bytes) -> "CodedRegion":
        blob = bytes(blob)
        if len(blob) < _REGION_HEADER.size:
            raise CorruptStream("coded region shorter than its 17-byte header")
        magic, width, height, template_id, length = _REGION_HEADER.unpack_from(blob)
        if magic != REGION_MAGIC:
            raise CorruptStream(f"bad coded-region magic {magic!r}")
        if template_id != TEMPLATE_ID:
            raise CorruptStream(f"unsupported template {template_id}")
        if width < 1 or height < 1:
            raise CorruptStream(f"invalid region dimensions {width}x{height}")
        body = blob[_REGION_HEADER.size:]
        if len(body) != length:
            raise CorruptStream(f"coded region declares {length} data bytes, found {len(body)}")
        return cls(width, height, body, template_id)


def context_of(bitmap, m: int, n: int) -> int:
    """Template-0 context of pixel (row m, column n), read directly from the bitmap."""
    bitmap = np.asarray(bitmap)
    h, w = bitmap.shape
    cx = 0
    for dx, dy, bit in TEMPLATE0:
        y, x = m + dy, n + dx
        if 0 <= y < h and 0 <= x < w and bitmap[y, x]:
            cx |= 1 << bit
    return cx


def _padded_rows(bitmap: np.ndarray) -> list[list[int]]:
    # two zero rows on top, four zero columns on each side
    h, w = bitmap.shape
    padded = np.zeros((h + 2, w + 8), dtype=np.uint8)
    padded[2:, 4:w + 4] = bitmap
    return padded.tolist()


def encode_region(bitmap) -> CodedRegion:
    bitmap = as_bits(bitmap)
    h, w = bitmap.shape
    if h * w > 0xFFFFFFFF:
        raise RegionTooLarge(f"{w}x{h} exceeds 2^32-1 pixels")
    rows = _padded_rows(bitmap)
    enc = MqEncoder()
    encode = enc.encode
    for y in range(h):
        r2, r1, r0 = rows[y], rows[y + 1], rows[y + 2]
        # column x of the bitmap is index x + 4 in a padded row
        w2 = (r2[2] << 4) | (r2[3] << 3) | (r2[4] << 2) | (r2[5] << 1) | r2[6]
        w1 = (
            (r1[1] << 6) | (r1[2] << 5) | (r1[3] << 4) | (r1[4] << 3)
            | (r1[5] << 2) | (r1[6] << 1) | r1[7]
        )
        w0 = 0
        for x in range(w):
            v = r0[x + 4]
            encode(v, w0 | (w1 << 4) | (w2 << 11))
            w0 = ((w0 << 1) | v) & 0xF
            w1 = ((w1 << 1) | r1[x + 8]) & 0x7F
            w2 = ((w2 << 1) | r2[x + 7]) & 0x1F
    return CodedRegion(w, h, enc.flush())


def decode_region(region: CodedRegion) -> np.ndarray:
    """Inverse of :func:`encode_region`; returns a bool bitmap."""
    w, h = region.width, region.height
    if region.template_id != TEMPLATE_ID:
        raise CorruptStream(f"unsupported template {region.template_id}")
    if w < 1 or h < 1:
        raise CorruptStream(f"invalid region dimensions {w}x{h}")
    if h * w > 0xFFFFFFFF:
        raise RegionTooLarge(f"{w}x{h} exceeds 2^32-1 pixels")
    check_marker_conventions(region.data)
    dec = MqDecoder(region.data)
    decode = dec.decode
    zero = [0] * (w + 8)
    r2, r1 = zero, zero
    out = []
    for _ in range(h):
        r0 = [0] * (w + 8)
        w2 = (r2[2] << 4) | (r2[3] << 3) | (r2[4] << 2) | (r2[5] << 1) | r2[6]
        w1 = (
            (r1[1] << 6) | (r1[2] << 5) | (r1[3] << 4) | (r1[4] << 3)
            | (r1[5] << 2) | (r1[6] << 1) | r1[7]
        )
        w0 = 0
        for x in range(w):
            v = decode(w0 | (w1 << 4) | (w2 << 11))
            r0[x + 4] = v
            w0 = ((w0 << 1) | v) & 0xF
            w1 = ((w1 << 1) | r1[x + 8]) & 0x7F
            w2 = ((w2 << 1) | r2[x + 7]) & 0x1F
        out.append(r0[4:w + 4])
        r2, r1 = r1, r0
    return np.array(out, dtype=bool).reshape(h, w)


def compression_ratio(region: CodedRegion) -> float:
    """1 - coded bits / raw bits, counting only the MQ data bytes."""
    return 1.0 - 8 * len(region.data) / (region.width * region.height)
