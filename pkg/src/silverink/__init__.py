"""Reversible hiding of a halftoned special-colour ink layer inside an RGB image."""
from .bilevel import CodedRegion, context_of, decode_region, encode_region
from .errors import *  # noqa: F401,F403
from .halftone import DitherMatrix, MatrixId, bayer_matrix, clustered_matrix, dither
from .imagery import crc32, load_pnm, read_pnm, save_pnm, write_pnm
from .peehs import (
    EmbedRecord,
    capacity,
    choose_threshold,
    embed,
    embed_record,
    expand_error,
    extract,
    extract_record,
    predict,
    read_header,
    recover_error,
)
from .pipeline import (
    HideConfig,
    HideResult,
    PayloadEnvelope,
    RevealResult,
    hide,
    hide_detailed,
    reveal,
    reveal_detailed,
)
from .quality import QualityReport, channel_psnr, mssim, psnr, report, rgb_mssim, rgb_psnr

__version__ = "0.1.0"
