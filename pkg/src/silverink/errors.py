"""Exception hierarchy. Every error raised by the package derives from SilverInkError."""


class SilverInkError(Exception):
    pass


# PNM I/O
class PnmError(SilverInkError):
    pass


class MalformedHeader(PnmError):
    pass


class UnsupportedMaxval(PnmError):
    pass


class TruncatedData(PnmError):
    pass


# bi-level codec
class RegionTooLarge(SilverInkError):
    pass


class CorruptStream(SilverInkError):
    pass


# reversible embedding
class BorderPixel(SilverInkError):
    pass


class CapacityExceeded(SilverInkError):
    pass


class HeaderOverflow(SilverInkError):
    pass


class BadMagic(SilverInkError):
    pass


class MalformedMap(SilverInkError):
    pass


class ChecksumMismatch(SilverInkError):
    """Recovered data failed an integrity check (CRC or internal consistency)."""


# metrics / pipeline
class DimensionMismatch(SilverInkError):
    pass


class TooSmall(SilverInkError):
    pass


class NoPayloadFound(SilverInkError):
    pass
