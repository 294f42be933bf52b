"""Synthetic covers and silver layers for experiments and tests.

All generators take a ``numpy.random.Generator`` where randomness is
involved and return uint8 arrays.
"""
from __future__ import annotations

import numpy as np
from scipy.ndimage import gaussian_filter, zoom


def _u8(a):
    return np.clip(np.rint(a), 0, 255).astype(np.uint8)


def gradient(height, width, direction="horizontal", lo=0, hi=255):
    """Linear ramp from ``lo`` to ``hi`` across the image."""
    if direction == "horizontal":
        ramp = np.linspace(lo, hi, width)[None, :].repeat(height, 0)
    elif direction == "vertical":
        ramp = np.linspace(lo, hi, height)[:, None].repeat(width, 1)
    elif direction == "diagonal":
        y, x = np.mgrid[0:height, 0:width]
        ramp = lo + (hi - lo) * (x / max(width - 1, 1) + y / max(height - 1, 1)) / 2
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return _u8(ramp)


def smooth(height, width, rng, noise=1.0, amplitude=60.0):
    """Low-frequency sinusoidal field around mid-gray plus a little Gaussian noise."""
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    fx, fy = rng.uniform(20, 80, 2)
    phase = rng.uniform(0, 2 * np.pi, 2)
    field = 128 + amplitude * np.sin(x / fx + phase[0]) * np.cos(y / fy + phase[1])
    return _u8(field + rng.normal(0, noise, field.shape))


def noise(height, width, rng, sigma=6.0, mean=128.0):
    return _u8(rng.normal(mean, sigma, (height, width)))


def texture(height, width, rng, cell=16, octaves=3, contrast=90.0):
    """Value-noise texture: several octaves of cubic-upsampled random lattices."""
    out = np.zeros((height, width))
    amp = 1.0
    for o in range(octaves):
        step = max(cell >> o, 2)
        gh, gw = height // step + 2, width // step + 2
        lattice = rng.uniform(-1, 1, (gh, gw))
        up = zoom(lattice, step, order=3)[:height, :width]
        out += amp * up
        amp /= 2
    out /= np.abs(out).max() or 1.0
    return _u8(128 + contrast * out)


def photo_like(height, width, rng):
    """Blurred blobs over a gentle ramp with sensor-like noise."""
    base = gradient(height, width, "diagonal", 60, 190).astype(np.float64)
    blobs = gaussian_filter(rng.normal(0, 1, (height, width)), sigma=max(height, width) / 24)
    blobs *= 40 / (np.abs(blobs).max() or 1.0)
    return _u8(base + blobs + rng.normal(0, 1.5, (height, width)))


def rgb(planes):
    return np.stack(planes, axis=-1).astype(np.uint8)


def silver_layer(height, width, kind="radial", coverage=0.5, rng=None):
    """8-bit silver ink designs.

    ``coverage`` scales the ink level so that roughly that fraction of
    pixels is inked after dithering.
    """
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    level = 255.0 * coverage
    if kind == "constant":
        return _u8(np.full((height, width), level))
    if kind == "gradient":
        return gradient(height, width, "horizontal", 0, min(255, 2 * level))
    if kind == "radial":
        cy, cx = (height - 1) / 2, (width - 1) / 2
        r = np.hypot((y - cy) / max(height, 1), (x - cx) / max(width, 1))
        return _u8(np.clip(2 * level * (1 - 2 * r), 0, 255))
    if kind == "logo":
        # a few hard-edged shapes, as a designer would place
        img = np.zeros((height, width))
        img[height // 6: height // 2, width // 8: width // 2] = level
        cy, cx, rad = 2 * height / 3, 2 * width / 3, min(height, width) / 5
        img[(y - cy) ** 2 + (x - cx) ** 2 < rad * rad] = min(255, 1.5 * level)
        return _u8(img)
    if kind == "blobs":
        rng = rng if rng is not None else np.random.default_rng(0)
        field = gaussian_filter(rng.normal(0, 1, (height, width)), sigma=max(height, width) / 16)
        field /= np.abs(field).max() or 1.0
        return _u8(np.clip(level * (1 + field), 0, 255))
    raise ValueError(f"unknown silver layer kind {kind!r}")
