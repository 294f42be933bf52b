"""Adaptive binary MQ arithmetic coder (the coder shared by JBIG2 and JPEG 2000).

Software conventions of the standard are followed: INITENC / ENCODE /
RENORME / BYTEOUT / FLUSH on the encoder side and INITDEC / DECODE /
RENORMD / BYTEIN on the decoder side, with 0xFF bit stuffing and a
terminating 0xFF 0xAC marker.
"""
from __future__ import annotations

from .errors import CorruptStream

# (Qe, NMPS, NLPS, SWITCH) for each of the 47 probability states.
MQ_TABLE = (
    (0x5601, 1, 1, 1),
    (0x3401, 2, 6, 0),
    (0x1801, 3, 9, 0),
    (0x0AC1, 4, 12, 0),
    (0x0521, 5, 29, 0),
    (0x0221, 38, 33, 0),
    (0x5601, 7, 6, 1),
    (0x5401, 8, 14, 0),
    (0x4801, 9, 14, 0),
    (0x3801, 10, 14, 0),
    (0x3001, 11, 17, 0),
    (0x2401, 12, 18, 0),
    (0x1C01, 13, 20, 0),
    (0x1601, 29, 21, 0),
    (0x5601, 15, 14, 1),
    (0x5401, 16, 14, 0),
    (0x5101, 17, 15, 0),
    (0x4801, 18, 16, 0),
    (0x3801, 19, 17, 0),
    (0x3401, 20, 18, 0),
    (0x3001, 21, 19, 0),
    (0x2801, 22, 19, 0),
    (0x2401, 23, 20, 0),
    (0x2201, 24, 21, 0),
    (0x1C01, 25, 22, 0),
    (0x1801, 26, 23, 0),
    (0x1601, 27, 24, 0),
    (0x1401, 28, 25, 0),
    (0x1201, 29, 26, 0),
    (0x1101, 30, 27, 0),
    (0x0AC1, 31, 28, 0),
    (0x09C1, 32, 29, 0),
    (0x08A1, 33, 30, 0),
    (0x0521, 34, 31, 0),
    (0x0441, 35, 32, 0),
    (0x02A1, 36, 33, 0),
    (0x0221, 37, 34, 0),
    (0x0141, 38, 35, 0),
    (0x0111, 39, 36, 0),
    (0x0085, 40, 37, 0),
    (0x0049, 41, 38, 0),
    (0x0025, 42, 39, 0),
    (0x0015, 43, 40, 0),
    (0x0009, 44, 41, 0),
    (0x0005, 45, 42, 0),
    (0x0001, 45, 43, 0),
    (0x5601, 46, 46, 0),
)

_QE = tuple(row[0] for row in MQ_TABLE)
_NMPS = tuple(row[1] for row in MQ_TABLE)
_NLPS = tuple(row[2] for row in MQ_TABLE)
_SWITCH = tuple(row[3] for row in MQ_TABLE)


class MqEncoder:
    """MQ encoder over ``n_contexts`` adaptive contexts, all starting at state 0, MPS 0."""

    def __init__(self, n_contexts: int = 1 << 16):
        self.index = [0] * n_contexts
        self.mps = [0] * n_contexts
        # INITENC; out[0] is the byte preceding the stream and is dropped
        self.a = 0x8000
        self.c = 0
        self.ct = 12
        self.out = bytearray(b"\x00")
        self._flushed = False

    def _byteout(self):
        out = self.out
        if out[-1] == 0xFF:
            out.append(self.c >> 20)
            self.c &= 0xFFFFF
            self.ct = 7
        elif self.c < 0x8000000:
            out.append(self.c >> 19)
            self.c &= 0x7FFFF
            self.ct = 8
        else:
            out[-1] += 1
            if out[-1] == 0xFF:
                self.c &= 0x7FFFFFF
                out.append(self.c >> 20)
                self.c &= 0xFFFFF
                self.ct = 7
            else:
                # the carry bit already went into the previous byte
                out.append((self.c >> 19) & 0xFF)
                self.c &= 0x7FFFF
                self.ct = 8

    def encode(self, bit: int, cx: int) -> None:
        i = self.index[cx]
        qe = _QE[i]
        a = self.a - qe
        if bit == self.mps[cx]:
            if a & 0x8000:
                self.a = a
                self.c += qe
                return
            if a < qe:
                a = qe
            else:
                self.c += qe
            self.index[cx] = _NMPS[i]
        else:
            if a < qe:
                self.c += qe
            else:
                a = qe
            if _SWITCH[i]:
                self.mps[cx] ^= 1
            self.index[cx] = _NLPS[i]
        # RENORME
        c = self.c
        ct = self.ct
        while True:
            a <<= 1
            c <<= 1
            ct -= 1
            if ct == 0:
                self.c = c
                self._byteout()
                c = self.c
                ct = self.ct
            if a & 0x8000:
                break
        self.a = a
        self.c = c
        self.ct = ct

    def flush(self) -> bytes:
        """Terminate the codeword and return the coded bytes (idempotent)."""
        if not self._flushed:
            # SETBITS
            tempc = self.c + self.a
            self.c |= 0xFFFF
            if self.c >= tempc:
                self.c -= 0x8000
            self.c <<= self.ct
            self._byteout()
            self.c <<= self.ct
            self._byteout()
            if self.out[-1] != 0xFF:
                self.out.append(0xFF)
            self.out.append(0xAC)
            self._flushed = True
        return bytes(self.out[1:])


class MqDecoder:
    """MQ decoder; bytes past the end of ``data`` read as 0xFF."""

    def __init__(self, data: bytes, n_contexts: int = 1 << 16):
        self.data = bytes(data)
        self.index = [0] * n_contexts
        self.mps = [0] * n_contexts
        # INITDEC
        self.bp = 0
        self.c = self._byte(0) << 16
        self.ct = 0
        self._bytein()
        self.c = (self.c << 7) & 0xFFFFFFFF
        self.ct -= 7
        self.a = 0x8000

    def _byte(self, pos: int) -> int:
        return self.data[pos] if pos < len(self.data) else 0xFF

    @property
    def consumed(self) -> int:
        """Number of stream bytes the decoder has read so far."""
        return min(self.bp + 1, len(self.data))

    def _bytein(self):
        b = self._byte(self.bp)
        if b == 0xFF:
            if self._byte(self.bp + 1) > 0x8F:
                self.c += 0xFF00
                self.ct = 8
            else:
                self.bp += 1
                self.c += self._byte(self.bp) << 9
                self.ct = 7
        else:
            self.bp += 1
            self.c += self._byte(self.bp) << 8
            self.ct = 8

    def decode(self, cx: int) -> int:
        i = self.index[cx]
        qe = _QE[i]
        a = self.a - qe
        if (self.c >> 16) < qe:
            # LPS_EXCHANGE
            if a < qe:
                d = self.mps[cx]
                self.index[cx] = _NMPS[i]
            else:
                d = 1 - self.mps[cx]
                if _SWITCH[i]:
                    self.mps[cx] = d
                self.index[cx] = _NLPS[i]
            a = qe
        else:
            self.c -= qe << 16
            if a & 0x8000:
                self.a = a
                return self.mps[cx]
            # MPS_EXCHANGE
            if a < qe:
                d = 1 - self.mps[cx]
                if _SWITCH[i]:
                    self.mps[cx] = d
                self.index[cx] = _NLPS[i]
            else:
                d = self.mps[cx]
                self.index[cx] = _NMPS[i]
        # RENORMD
        c = self.c
        ct = self.ct
        while True:
            if ct == 0:
                self.c = c
                self._bytein()
                c = self.c
                ct = self.ct
            a <<= 1
            c = (c << 1) & 0xFFFFFFFF
            ct -= 1
            if a & 0x8000:
                break
        self.a = a
        self.c = c
        self.ct = ct
        return d


def check_marker_conventions(data: bytes) -> None:
    """Reject streams that are not a single terminated MQ codeword.

    A valid stream ends with 0xFF 0xAC and contains no other 0xFF byte
    followed by a value above 0x8F.
    """
    data = bytes(data)
    if len(data) < 2 or data[-2:] != b"\xff\xac":
        raise CorruptStream("coded data does not end with the 0xFF 0xAC terminator")
    pos = data.find(b"\xff")
    while 0 <= pos < len(data) - 2:
        if data[pos + 1] > 0x8F:
            raise CorruptStream(f"marker 0xFF{data[pos + 1]:02X} inside coded data at offset {pos}")
        pos = data.find(b"\xff", pos + 1)
