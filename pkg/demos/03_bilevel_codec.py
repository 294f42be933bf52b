# %% [markdown]
# # Compressing the ink plane
#
# The dithered plane is coded with an adaptive binary arithmetic coder (MQ)
# driven by a 16-pixel causal context, the template-0 neighbourhood used by
# JBIG2 generic regions.  Ordered dither is very regular, so the coder
# learns it quickly.

# %%
import time

import numpy as np

from silverink import synthetic as S
from silverink.bilevel import compression_ratio, decode_region, encode_region
from silverink.halftone import bayer_matrix, clustered_matrix, dither

# %%
plane = dither(S.gradient(256, 256), bayer_matrix())
t = time.perf_counter()
region = encode_region(plane)
print(f"{plane.size} bits -> {len(region.data)} bytes in {time.perf_counter() - t:.2f}s")
print("ratio", round(compression_ratio(region), 4))

# %%
back = decode_region(region)
print("lossless:", np.array_equal(back, plane))

# %% [markdown]
# How the ratio depends on the dither matrix and on the design.

# %%
rng = np.random.default_rng(1)
designs = {
    "gradient": S.gradient(256, 256),
    "radial": S.silver_layer(256, 256, "radial", 0.5),
    "logo": S.silver_layer(256, 256, "logo", 0.6),
    "blobs": S.silver_layer(256, 256, "blobs", 0.5, rng),
}
for name, layer in designs.items():
    b = compression_ratio(encode_region(dither(layer, bayer_matrix())))
    c = compression_ratio(encode_region(dither(layer, clustered_matrix())))
    print(f"{name:9s} bayer {b:.3f}  clustered {c:.3f}")

# %% [markdown]
# Random noise is the worst case: about one coded bit per pixel.

# %%
noise = rng.random((128, 128)) < 0.5
print(round(compression_ratio(encode_region(noise)), 3))
