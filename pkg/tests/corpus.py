"""Deterministic cover/silver corpus for end-to-end reversibility runs."""
import numpy as np

from silverink import synthetic as S
from silverink.halftone import MatrixId

# (height, width); row 0 must hold the 75-bit header, so widths start at 96
SIZES = [
    (16, 96), (16, 256), (16, 512), (24, 128), (32, 96), (32, 200), (48, 160),
    (64, 96), (64, 256), (96, 128), (100, 300), (128, 128), (160, 240),
    (256, 96), (256, 256), (300, 200), (512, 128), (512, 512),
]
COVERS = ["noise", "gradient", "texture", "smooth", "photo"]
SILVERS = ["constant", "gradient", "radial", "logo", "blobs"]
COVERAGES = [0.0, 0.15, 0.5, 0.85, 1.0]


def make_cover(kind, h, w, rng):
    def plane(i):
        if kind == "noise":
            return S.noise(h, w, rng, sigma=float(rng.uniform(2, 8)), mean=float(rng.uniform(60, 190)))
        if kind == "gradient":
            return S.gradient(h, w, ("horizontal", "vertical", "diagonal")[i], 24, 232)
        if kind == "texture":
            return S.texture(h, w, rng, cell=int(rng.choice([8, 16, 32])), contrast=80)
        if kind == "smooth":
            return S.smooth(h, w, rng)
        return S.photo_like(h, w, rng)

    return S.rgb([plane(i) for i in range(3)])


def cases(n=105, seed=2024):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        h, w = SIZES[i % len(SIZES)]
        out.append(
            dict(
                index=i,
                size=(h, w),
                cover=COVERS[i % len(COVERS)],
                silver=SILVERS[(i // 2) % len(SILVERS)],
                coverage=COVERAGES[(i // 3) % len(COVERAGES)],
                matrix=MatrixId(i % 2),
                channel="RGB"[(i // 5) % 3],
                seed=int(rng.integers(0, 2**31)),
            )
        )
    return out


def materialize(case):
    rng = np.random.default_rng(case["seed"])
    h, w = case["size"]
    cover = make_cover(case["cover"], h, w, rng)
    silver = S.silver_layer(h, w, case["silver"], case["coverage"], rng)
    return cover, silver
