# %% [markdown]
# # Netpbm files
#
# silverink reads and writes the three binary netpbm flavours it needs:
# P4 for ink bit planes, P5 for gray planes and P6 for RGB covers.
# Everything comes back as a plain numpy array.

# %%
import numpy as np

import silverink as si

rgb = np.zeros((4, 6, 3), np.uint8)
rgb[..., 0] = np.arange(6) * 40
blob = si.write_pnm(rgb)
print(blob[:15])

# %%
back = si.read_pnm(blob)
print(back.dtype, back.shape, np.array_equal(back, rgb))

# %% [markdown]
# Headers may carry comments anywhere between tokens.

# %%
pgm = b"P5\n# made by hand\n3 2\n# max\n255\n" + bytes(range(6))
print(si.read_pnm(pgm))

# %% [markdown]
# A P4 bit plane is a bool array; rows are padded to whole bytes on disk.

# %%
bits = np.eye(5, 9, dtype=bool)
print(si.write_pnm(bits))
print(si.read_pnm(si.write_pnm(bits)).astype(int))

# %%
try:
    si.read_pnm(b"P5 2 2 65535\n" + bytes(8))
except si.PnmError as exc:
    print(type(exc).__name__, exc)
