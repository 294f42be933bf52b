# %% [markdown]
# # Measuring distortion
#
# PSNR is the usual log-MSE figure; MSSIM averages structural similarity
# over 11x11 Gaussian windows and tracks perceived changes better.

# %%
import numpy as np

from silverink import synthetic as S
from silverink.quality import mssim, psnr, report

rng = np.random.default_rng(2)
a = S.photo_like(128, 128, rng)
print(psnr(a, a), mssim(a, a))
print(round(psnr(a, a ^ 1), 4))  # every pixel off by one

# %% [markdown]
# Same MSE, different structure: a constant offset keeps SSIM high, while
# noise of the same power lowers it.

# %%
shifted = np.clip(a.astype(int) + 4, 0, 255).astype(np.uint8)
noisy = np.clip(a + rng.choice([-4, 4], a.shape), 0, 255).astype(np.uint8)
for name, b in (("offset", shifted), ("noise", noisy)):
    print(name, round(psnr(a, b), 2), round(mssim(a, b), 4))

# %%
print(report(a, noisy, payload_bits=1200).as_dict())
