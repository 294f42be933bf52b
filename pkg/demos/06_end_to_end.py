# %% [markdown]
# # Hiding a silver layer in a photo
#
# The full round trip: dither the silver design, compress it, wrap it in a
# checksummed envelope and embed it reversibly in one colour channel.
# reveal() finds the channel, restores the exact cover and returns the
# ink plane the printer needs.

# %%
import numpy as np

import silverink as si
from silverink import synthetic as S
from silverink.halftone import dither
from silverink.quality import channel_psnr

rng = np.random.default_rng(11)
cover = S.rgb([S.photo_like(384, 512, rng) for _ in range(3)])
silver = S.silver_layer(384, 512, "logo", 0.6)

# %%
res = si.hide_detailed(cover, silver, si.HideConfig(channel="B"))
print(res.channel, res.threshold, res.payload_bits, round(res.payload_bpp, 4))
print([round(p, 2) for p in channel_psnr(cover, res.marked)])

# %%
back = si.reveal_detailed(res.marked)
print(back.channel, back.matrix_id.name)
print(np.array_equal(back.cover, cover), np.array_equal(back.silver_bits, dither(silver)))

# %% [markdown]
# Damage to the carrier pixels is caught by the envelope checksum.

# %%
bad = res.marked.copy()
bad[2:4, 1:64, 2] ^= 1
try:
    si.reveal(bad)
except si.ChecksumMismatch as exc:
    print("rejected:", exc)

# %% [markdown]
# The same flow from a shell:
#
#     silverink hide --cover cover.ppm --silver silver.pgm --out marked.ppm
#     silverink reveal --marked marked.ppm --out-cover restored.ppm --out-silver ink.pbm
