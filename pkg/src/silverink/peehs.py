"""Reversible embedding by prediction-error expansion with histogram shifting.

Each interior pixel u is predicted from its four cross neighbours,
``p = floor((left + below + right + above) / 4)``, and its error
``d = u - p`` is rewritten as

* ``2d + w``  when ``-T <= d < T``  (one payload bit w is carried),
* ``d + T``   when ``d >= T``,
* ``d - T``   when ``d < -T``,

giving the marked pixel ``U = p + D``.

Scheduling. Interior pixels (every pixel with four neighbours, excluding
row 0) form two checkerboard classes: pass 1 holds ``(m + n)`` even, pass 2
``(m + n)`` odd, each visited in raster order. The cross predictor of one
class reads only the other class and the border, so pass 1 predicts from
unmarked values and pass 2 from pass-1 values in their marked state.
Extraction undoes pass 2 first and then pass 1.

The bit stream is split between the passes, ``ceil(L/2)`` bits to pass 1
and the rest to pass 2. Inside a pass, embedding stops at the pixel that
takes the last bit; pixels after it are left alone. The decoder knows L
from the header, so it can find the same stopping point.

Overflow. A pixel whose marked value could leave [0, 255] (for either bit
value) is skipped, left unmodified and listed in the location map.

Self-describing layout. :func:`embed` writes a header into the LSBs of
row 0 (magic 0xA5C3:16, version:4, T:7, payload bits:32, map count:16,
map entries:32 each, MSB first) and carries the displaced original LSBs
at the tail of the embedded stream. :func:`embed_record` is the same
transform without the in-plane header; it returns an :class:`EmbedRecord`
that must be passed to :func:`extract_record`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    BadMagic,
    BorderPixel,
    CapacityExceeded,
    ChecksumMismatch,
    HeaderOverflow,
    MalformedMap,
)
from .imagery import as_gray, bits_to_int, int_to_bits

HEADER_MAGIC = 0xA5C3
HEADER_VERSION = 1
HEADER_FIXED_BITS = 16 + 4 + 7 + 32 + 16
MAP_ENTRY_BITS = 32
MAX_THRESHOLD = 127


@dataclass(frozen=True)
class EmbedRecord:
    threshold: int
    location_map: tuple[int, ...]
    header_lsbs: tuple[int, ...]
    payload_bits: int


class Header(NamedTuple):
    threshold: int
    payload_bits: int
    location_map: tuple[int, ...]

    @property
    def size(self) -> int:
        return header_size(len(self.location_map))


def header_size(map_entries: int) -> int:
    return HEADER_FIXED_BITS + MAP_ENTRY_BITS * map_entries


def _check_threshold(T):
    if not (1 <= int(T) <= MAX_THRESHOLD):
        raise ValueError(f"threshold must be in [1, {MAX_THRESHOLD}], got {T}")
    return int(T)


def _as_bit_array(bits) -> np.ndarray:
    a = np.asarray(bits, dtype=np.int64).ravel()
    if a.size and ((a < 0) | (a > 1)).any():
        raise ValueError("payload must contain only 0/1 values")
    return a.astype(np.uint8)


# --- scalar primitives ----------------------------------------------------

def predict(plane, m: int, n: int) -> int:
    """Floor-averaged cross prediction of pixel (row m, column n)."""
    plane = np.asarray(plane)
    h, w = plane.shape
    if not (1 <= m <= h - 2 and 1 <= n <= w - 2):
        raise BorderPixel(f"pixel ({m}, {n}) lacks one of its four neighbours in a {h}x{w} plane")
    total = int(plane[m, n - 1]) + int(plane[m + 1, n]) + int(plane[m, n + 1]) + int(plane[m - 1, n])
    return total // 4


def expand_error(d: int, w: int, T: int) -> int:
    if -T <= d < T:
        return 2 * d + w
    if d >= T:
        return d + T
    return d - T


def recover_error(D: int, T: int) -> tuple[int, int | None]:
    """Invert :func:`expand_error`: returns (d, w) or (d, None) for a shifted error."""
    if -2 * T <= D < 2 * T:
        d = D // 2
        return d, D - 2 * d
    if D >= 2 * T:
        return D - T, None
    return D + T, None


# --- schedule ---------------------------------------------------------------

def schedule(height: int, width: int, parity: int) -> tuple[np.ndarray, np.ndarray]:
    """Rows and columns of one pass (parity 0 = pass 1, 1 = pass 2), raster order."""
    if height < 3 or width < 3:
        return np.empty(0, np.intp), np.empty(0, np.intp)
    mm, nn = np.mgrid[1:height - 1, 1:width - 1]
    sel = (mm + nn) % 2 == parity
    return mm[sel], nn[sel]


def _predict_many(work: np.ndarray, rows, cols) -> np.ndarray:
    return (work[rows, cols - 1] + work[rows + 1, cols] + work[rows, cols + 1] + work[rows - 1, cols]) // 4


def _overflow(u, p, d, T) -> np.ndarray:
    # True where some branch of the expansion could leave [0, 255] for w in {0, 1}
    inband = (d >= -T) & (d < T)
    return np.where(
        inband,
        (p + 2 * d < 0) | (p + 2 * d + 1 > 255),
        np.where(d >= T, u + T > 255, u - T < 0),
    )


def _static_pass_stats(plane: np.ndarray, T: int):
    work = plane.astype(np.int64)
    h, w = work.shape
    carriers = 0
    overflow = 0
    for parity in (0, 1):
        rows, cols = schedule(h, w, parity)
        if rows.size == 0:
            continue
        p = _predict_many(work, rows, cols)
        u = work[rows, cols]
        d = u - p
        over = _overflow(u, p, d, T)
        inband = (d >= -T) & (d < T)
        carriers += int(np.count_nonzero(inband & ~over))
        overflow += int(np.count_nonzero(over))
    return carriers, overflow


def capacity(plane, T: int) -> int:
    """Number of scheduled pixels that can carry a bit at threshold T.

    Counted on the unmarked plane for both passes, excluding pixels that
    would be skipped as overflow. Header and map overhead are not deducted.
    """
    plane = as_gray(plane)
    T = _check_threshold(T)
    return _static_pass_stats(plane, T)[0]


def choose_threshold(plane, payload_bits: int) -> int:
    """Smallest T whose capacity covers the payload plus header overhead.

    The overhead at T is the header with one map entry per scheduled pixel
    that would overflow at T; those header bits also travel in the stream
    as displaced row-0 LSBs.
    """
    plane = as_gray(plane)
    if payload_bits < 0:
        raise ValueError("payload_bits must be non-negative")
    for T in range(1, MAX_THRESHOLD + 1):
        cap, over = _static_pass_stats(plane, T)
        if cap >= payload_bits + header_size(over):
            return T
    raise CapacityExceeded(f"{payload_bits} payload bits do not fit at any threshold up to {MAX_THRESHOLD}")


# --- pass machinery ---------------------------------------------------------

def _embed_pass(work, rows, cols, bits, T, forced, width) -> list[int]:
    """Embed ``bits`` into one pass in place; return flat indices skipped before the stop point."""
    n = bits.size
    if n == 0 or rows.size == 0:
        if n:
            raise CapacityExceeded("pass has no pixels")
        return []
    p = _predict_many(work, rows, cols)
    u = work[rows, cols]
    d = u - p
    flat = rows * width + cols
    skip = _overflow(u, p, d, T) | np.isin(flat, forced)
    inband = (d >= -T) & (d < T)
    carrier = inband & ~skip
    cum = np.cumsum(carrier)
    if cum[-1] < n:
        raise CapacityExceeded(f"pass carries {int(cum[-1])} bits, {n} needed")
    end = int(np.searchsorted(cum, n)) + 1
    p, u, d, skip, carrier = p[:end], u[:end], d[:end], skip[:end], carrier[:end]
    new = u.copy()
    new[carrier] = p[carrier] + 2 * d[carrier] + bits
    up = ~skip & ~carrier & (d >= T)
    down = ~skip & ~carrier & (d < -T)
    new[up] += T
    new[down] -= T
    work[rows[:end], cols[:end]] = new
    return flat[:end][skip].tolist()


def _extract_pass(work, rows, cols, n, T, skipset, width) -> np.ndarray:
    if n == 0:
        return np.empty(0, np.uint8)
    if rows.size == 0:
        raise ChecksumMismatch("declared payload exceeds the scheduled pixels")
    p = _predict_many(work, rows, cols)
    U = work[rows, cols]
    D = U - p
    skip = np.isin(rows * width + cols, skipset)
    carrier = (D >= -2 * T) & (D < 2 * T) & ~skip
    cum = np.cumsum(carrier)
    if cum[-1] < n:
        raise ChecksumMismatch(f"marked plane carries {int(cum[-1])} bits in a pass, {n} declared")
    end = int(np.searchsorted(cum, n)) + 1
    p, U, D, skip, carrier = p[:end], U[:end], D[:end], skip[:end], carrier[:end]
    d = np.floor_divide(D[carrier], 2)
    bits = (D[carrier] - 2 * d).astype(np.uint8)
    orig = U.copy()
    orig[carrier] = p[carrier] + d
    orig[~skip & ~carrier & (D >= 2 * T)] -= T
    orig[~skip & ~carrier & (D < -2 * T)] += T
    if orig.size and (orig.min() < 0 or orig.max() > 255):
        raise ChecksumMismatch("restored samples fall outside [0, 255]")
    work[rows[:end], cols[:end]] = orig
    return bits


def _split(L: int) -> tuple[int, int]:
    first = (L + 1) // 2
    return first, L - first


def _embed_core(work, stream, T, forced) -> tuple[int, ...]:
    h, w = work.shape
    n1, _ = _split(stream.size)
    forced = np.asarray(sorted(forced), dtype=np.int64)
    skipped = set(forced.tolist())
    for parity, chunk in ((0, stream[:n1]), (1, stream[n1:])):
        rows, cols = schedule(h, w, parity)
        skipped.update(_embed_pass(work, rows, cols, chunk, T, forced, w))
    return tuple(sorted(skipped))


def _extract_core(work, L, T, location_map) -> np.ndarray:
    h, w = work.shape
    n1, n2 = _split(L)
    skipset = np.asarray(location_map, dtype=np.int64)
    rows, cols = schedule(h, w, 1)
    bits2 = _extract_pass(work, rows, cols, n2, T, skipset, w)
    rows, cols = schedule(h, w, 0)
    bits1 = _extract_pass(work, rows, cols, n1, T, skipset, w)
    return np.concatenate([bits1, bits2])


# --- record-based API -------------------------------------------------------

def embed_record(plane, payload, T: int) -> tuple[np.ndarray, EmbedRecord]:
    """Embed without an in-plane header; the returned record inverts it."""
    plane = as_gray(plane)
    T = _check_threshold(T)
    bits = _as_bit_array(payload)
    work = plane.astype(np.int64)
    location_map = _embed_core(work, bits, T, ())
    record = EmbedRecord(T, location_map, (), int(bits.size))
    return work.astype(np.uint8), record


def extract_record(marked, record: EmbedRecord) -> tuple[np.ndarray, np.ndarray]:
    marked = as_gray(marked)
    work = marked.astype(np.int64)
    _validate_map(record.location_map, *work.shape)
    bits = _extract_core(work, record.payload_bits, record.threshold, record.location_map)
    return bits, work.astype(np.uint8)


# --- self-describing API ----------------------------------------------------

def _header_bits(T, payload_bits, location_map) -> np.ndarray:
    if len(location_map) > 0xFFFF:
        raise HeaderOverflow(f"{len(location_map)} location-map entries exceed the 16-bit count")
    bits = int_to_bits(HEADER_MAGIC, 16) + int_to_bits(HEADER_VERSION, 4) + int_to_bits(T, 7)
    bits += int_to_bits(payload_bits, 32) + int_to_bits(len(location_map), 16)
    for idx in location_map:
        bits += int_to_bits(idx, MAP_ENTRY_BITS)
    return np.array(bits, dtype=np.uint8)


def _validate_map(location_map, h, w):
    prev = -1
    for idx in location_map:
        m, n = divmod(idx, w)
        if idx <= prev or not (1 <= m <= h - 2 and 1 <= n <= w - 2):
            raise MalformedMap(f"location-map entry {idx} is out of order or not an interior pixel")
        prev = idx


def read_header(marked) -> Header:
    """Parse and validate the row-0 LSB header of a marked plane."""
    marked = as_gray(marked)
    h, w = marked.shape
    lsbs = (marked[0] & 1).tolist()
    if w < HEADER_FIXED_BITS:
        raise BadMagic(f"row 0 is {w} pixels wide, too narrow for a header")
    if bits_to_int(lsbs[:16]) != HEADER_MAGIC:
        raise BadMagic("row-0 header magic not found")
    version = bits_to_int(lsbs[16:20])
    if version != HEADER_VERSION:
        raise BadMagic(f"unsupported header version {version}")
    T = bits_to_int(lsbs[20:27])
    if T < 1:
        raise BadMagic("header threshold is zero")
    payload_bits = bits_to_int(lsbs[27:59])
    count = bits_to_int(lsbs[59:75])
    if header_size(count) > w:
        raise MalformedMap(f"{count} map entries do not fit in a row of {w} pixels")
    entries = tuple(
        bits_to_int(lsbs[HEADER_FIXED_BITS + 32 * i: HEADER_FIXED_BITS + 32 * (i + 1)]) for i in range(count)
    )
    _validate_map(entries, h, w)
    return Header(T, payload_bits, entries)


def _embed_with_header(plane, bits, T) -> np.ndarray:
    h, w = plane.shape
    location_map: tuple[int, ...] = ()
    while True:
        size = header_size(len(location_map))
        if size > w:
            raise HeaderOverflow(
                f"header with {len(location_map)} map entries needs {size} bits, row 0 has {w}"
            )
        header = _header_bits(T, bits.size, location_map)
        tail = (plane[0, :size] & 1).astype(np.uint8)
        work = plane.astype(np.int64)
        work[0, :size] = (work[0, :size] & ~1) | header
        stream = np.concatenate([bits, tail])
        result = _embed_core(work, stream, T, location_map)
        if result == location_map:
            return work.astype(np.uint8)
        # the header row feeds the predictions of row 1, so the map is grown
        # until it reproduces itself
        location_map = result


def embed(plane, payload, T: int | None = None) -> np.ndarray:
    """Embed payload bits and return a marked plane that describes itself.

    With ``T=None`` the threshold starts at :func:`choose_threshold` and is
    raised until the embedding fits.
    """
    plane = as_gray(plane)
    bits = _as_bit_array(payload)
    h, w = plane.shape
    if h < 3 or w < 3:
        raise CapacityExceeded(f"a {w}x{h} plane has no interior pixels")
    if bits.size > 0xFFFFFFFF:
        raise CapacityExceeded("payload longer than 2^32-1 bits")
    if w < HEADER_FIXED_BITS:
        raise HeaderOverflow(f"row 0 has {w} pixels, the header needs at least {HEADER_FIXED_BITS}")
    if T is not None:
        return _embed_with_header(plane, bits, _check_threshold(T))
    error = None
    for candidate in range(choose_threshold(plane, bits.size), MAX_THRESHOLD + 1):
        try:
            return _embed_with_header(plane, bits, candidate)
        except (CapacityExceeded, HeaderOverflow) as exc:
            error = exc
    raise error


def extract(marked) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(payload bits, restored plane)`` from a plane made by :func:`embed`."""
    marked = as_gray(marked)
    header = read_header(marked)
    size = header.size
    work = marked.astype(np.int64)
    bits = _extract_core(work, header.payload_bits + size, header.threshold, header.location_map)
    payload, tail = bits[: header.payload_bits], bits[header.payload_bits:]
    work[0, :size] = (work[0, :size] & ~1) | tail
    return payload, work.astype(np.uint8)
