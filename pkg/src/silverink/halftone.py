"""Ordered dithering of the 8-bit silver layer into a bi-level ink plane."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .imagery import as_gray


class MatrixId(enum.IntEnum):
    BAYER8 = 0
    CLUSTERED8 = 1


@dataclass(frozen=True, eq=False)
class DitherMatrix:
    id: MatrixId
    ranks: np.ndarray  # 8x8, a permutation of 0..63

    @property
    def size(self) -> int:
        return self.ranks.shape[0]

    @property
    def thresholds(self) -> np.ndarray:
        """Per-cell gray thresholds, floor((rank + 0.5) * 256 / n^2)."""
        n2 = self.ranks.size
        return ((2 * self.ranks + 1) * 256) // (2 * n2)


def bayer_matrix() -> DitherMatrix:
    m = np.array([[0, 2], [3, 1]], dtype=np.int64)
    while m.shape[0] < 8:
        m = np.block([[4 * m, 4 * m + 2], [4 * m + 3, 4 * m + 1]])
    m.setflags(write=False)
    return DitherMatrix(MatrixId.BAYER8, m)


# Square spiral grown outward from the tile centre: rank k+1 is always a
# 4-neighbour of rank k, the centre 2x2 holds ranks 0..3, and any level up
# to rank 35 stays a single compact dot inside the inner 6x6.
_CLUSTERED = np.array(
    [
        [56, 57, 58, 59, 60, 61, 62, 63],
        [55, 30, 31, 32, 33, 34, 35, 36],
        [54, 29, 12, 13, 14, 15, 16, 37],
        [53, 28, 11, 2, 3, 4, 17, 38],
        [52, 27, 10, 1, 0, 5, 18, 39],
        [51, 26, 9, 8, 7, 6, 19, 40],
        [50, 25, 24, 23, 22, 21, 20, 41],
        [49, 48, 47, 46, 45, 44, 43, 42],
    ],
    dtype=np.int64,
)
_CLUSTERED.setflags(write=False)


def clustered_matrix() -> DitherMatrix:
    return DitherMatrix(MatrixId.CLUSTERED8, _CLUSTERED)


def matrix_by_id(matrix_id) -> DitherMatrix:
    matrix_id = MatrixId(matrix_id)
    if matrix_id is MatrixId.BAYER8:
        return bayer_matrix()
    return clustered_matrix()


def matrix_by_name(name: str) -> DitherMatrix:
    try:
        return {"bayer": bayer_matrix, "clustered": clustered_matrix}[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown dither matrix {name!r}; use 'bayer' or 'clustered'") from None


def dither(layer, matrix: DitherMatrix | None = None) -> np.ndarray:
    """Binarize a gray plane against a tiled dither matrix.

    A pixel is inked (True) when its value strictly exceeds the threshold of
    its matrix cell, so 0 never inks and 255 always does.
    """
    layer = as_gray(layer, "layer")
    if matrix is None:
        matrix = bayer_matrix()
    h, w = layer.shape
    n = matrix.size
    reps = (-(-h // n), -(-w // n))
    tiled = np.tile(matrix.thresholds, reps)[:h, :w]
    return layer > tiled
