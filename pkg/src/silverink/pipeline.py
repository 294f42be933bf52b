"""End-to-end hide / reveal of a silver ink layer inside an RGB image.

hide:   silver (8-bit) -> dither -> template-0 MQ coding -> envelope -> PEE-HS
        embedding into one colour channel.
reveal: locate the marked channel, extract and verify the envelope, decode
        the bit plane and return the restored cover alongside it.

Envelope layout, all integers big-endian::

    "SLV1" | version u8 | matrix id u8 | width u32 | height u32
    | region length u32 | coded region | crc32 u32 (over everything before it)
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from . import peehs
from .bilevel import CodedRegion, decode_region, encode_region
from .errors import (
    BadMagic,
    ChecksumMismatch,
    CorruptStream,
    DimensionMismatch,
    MalformedMap,
    NoPayloadFound,
)
from .halftone import MatrixId, dither, matrix_by_id
from .imagery import as_gray, as_rgb, bits_to_bytes, bytes_to_bits, crc32

ENVELOPE_MAGIC = b"SLV1"
ENVELOPE_VERSION = 1
_ENVELOPE_HEAD = struct.Struct(">4sBBIII")

CHANNELS = {"R": 0, "G": 1, "B": 2}
REVEAL_ORDER = ("B", "R", "G")


@dataclass(frozen=True)
class PayloadEnvelope:
    matrix_id: MatrixId
    region: CodedRegion

    @property
    def width(self) -> int:
        return self.region.width

    @property
    def height(self) -> int:
        return self.region.height

    def to_bytes(self) -> bytes:
        blob = self.region.to_bytes()
        head = _ENVELOPE_HEAD.pack(
            ENVELOPE_MAGIC, ENVELOPE_VERSION, int(self.matrix_id), self.width, self.height, len(blob)
        )
        body = head + blob
        return body + struct.pack(">I", crc32(body))

    @classmethod
    def from_bytes(cls, data: bytes) -> "PayloadEnvelope":
        data = bytes(data)
        if len(data) < _ENVELOPE_HEAD.size + 4:
            raise ChecksumMismatch("envelope truncated")
        (stored,) = struct.unpack(">I", data[-4:])
        if crc32(data[:-4]) != stored:
            raise ChecksumMismatch("envelope CRC-32 does not match")
        magic, version, matrix_id, width, height, length = _ENVELOPE_HEAD.unpack_from(data)
        if magic != ENVELOPE_MAGIC or version != ENVELOPE_VERSION:
            raise ChecksumMismatch(f"unexpected envelope magic/version {magic!r}/{version}")
        blob = data[_ENVELOPE_HEAD.size:-4]
        if len(blob) != length:
            raise ChecksumMismatch("envelope region length disagrees with its contents")
        try:
            region = CodedRegion.from_bytes(blob)
            matrix = MatrixId(matrix_id)
        except (CorruptStream, ValueError) as exc:
            raise ChecksumMismatch(f"envelope contents invalid: {exc}") from exc
        if (region.width, region.height) != (width, height):
            raise ChecksumMismatch("envelope dimensions disagree with the coded region")
        return cls(matrix, region)


@dataclass(frozen=True)
class HideConfig:
    channel: str = "B"
    matrix_id: MatrixId = MatrixId.BAYER8

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise ValueError(f"channel must be one of R, G, B, got {self.channel!r}")
        object.__setattr__(self, "matrix_id", MatrixId(self.matrix_id))


@dataclass(frozen=True)
class HideResult:
    marked: np.ndarray
    channel: str
    threshold: int
    payload_bits: int
    bits: np.ndarray = field(repr=False)

    @property
    def payload_bpp(self) -> float:
        h, w = self.marked.shape[:2]
        return self.payload_bits / (h * w)


@dataclass(frozen=True)
class RevealResult:
    cover: np.ndarray
    silver_bits: np.ndarray
    channel: str
    matrix_id: MatrixId
    payload_bits: int


def make_envelope(silver, config: HideConfig = HideConfig()) -> PayloadEnvelope:
    bitmap = dither(as_gray(silver, "silver"), matrix_by_id(config.matrix_id))
    return PayloadEnvelope(config.matrix_id, encode_region(bitmap))


def hide_detailed(cover, silver, config: HideConfig = HideConfig()) -> HideResult:
    cover = as_rgb(cover, "cover")
    silver = as_gray(silver, "silver")
    if silver.shape != cover.shape[:2]:
        raise DimensionMismatch(f"silver layer {silver.shape} does not match cover {cover.shape[:2]}")
    bits = bytes_to_bits(make_envelope(silver, config).to_bytes())
    c = CHANNELS[config.channel]
    plane = np.ascontiguousarray(cover[..., c])
    marked_plane = peehs.embed(plane, bits)
    marked = cover.copy()
    marked[..., c] = marked_plane
    T = peehs.read_header(marked_plane).threshold
    return HideResult(marked, config.channel, T, int(bits.size), bits)


def hide(cover, silver, config: HideConfig = HideConfig()) -> np.ndarray:
    """Return the cover with the dithered, compressed silver layer embedded."""
    return hide_detailed(cover, silver, config).marked


def reveal_detailed(marked, channel: str | None = None) -> RevealResult:
    marked = as_rgb(marked, "marked")
    order = (channel,) if channel else REVEAL_ORDER
    corrupt = None
    for name in order:
        c = CHANNELS[name]
        try:
            payload, plane = peehs.extract(np.ascontiguousarray(marked[..., c]))
        except (BadMagic, MalformedMap):
            continue
        except ChecksumMismatch as exc:
            corrupt = corrupt or exc
            continue
        try:
            if payload.size % 8:
                raise ChecksumMismatch("payload is not a whole number of bytes")
            envelope = PayloadEnvelope.from_bytes(bits_to_bytes(payload))
            bitmap = decode_region(envelope.region)
        except (ChecksumMismatch, CorruptStream) as exc:
            corrupt = corrupt or exc
            continue
        cover = marked.copy()
        cover[..., c] = plane
        return RevealResult(cover, bitmap, name, envelope.matrix_id, int(payload.size))
    if corrupt is not None:
        raise ChecksumMismatch(f"payload found but failed verification: {corrupt}")
    raise NoPayloadFound("no channel carries a valid header")


def reveal(marked, channel: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(cover, silver bit plane)`` restored from a marked image."""
    r = reveal_detailed(marked, channel)
    return r.cover, r.silver_bits
