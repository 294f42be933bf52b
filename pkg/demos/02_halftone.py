# %% [markdown]
# # Dithering the silver layer
#
# The printer can only lay ink or leave paper bare, so the 8-bit silver
# design is turned into a bit plane with an 8x8 ordered dither.
# Two matrices are available: Bayer (dispersed dots) and a clustered spiral.

# %%
import numpy as np

from silverink import synthetic as S
from silverink.halftone import bayer_matrix, clustered_matrix, dither

print(bayer_matrix().ranks)
print(clustered_matrix().ranks)

# %% [markdown]
# Each rank r becomes a gray threshold 4r+2; a pixel is inked when it is
# strictly brighter, so 0 never inks and 255 always does.

# %%
print(bayer_matrix().thresholds[:2])

# %%
ramp = S.gradient(8, 64)
for m in (bayer_matrix(), clustered_matrix()):
    plane = dither(ramp, m)
    print("\n".join("".join("#" if b else "." for b in row) for row in plane))
    print()

# %% [markdown]
# Ink coverage tracks the gray level on average.

# %%
for level in (0, 32, 128, 200, 255):
    flat = np.full((64, 64), level, np.uint8)
    print(level, dither(flat).mean().round(3), dither(flat, clustered_matrix()).mean().round(3))
