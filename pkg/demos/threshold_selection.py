"""Pick ridge/valley thresholds on a bimodal image, two ways.

Otsu maximizes the separation between the two classes; the fuzzy
selector minimizes the index of fuzziness, which bottoms out where a
crisp two-class reading of the image fits best. On a clean bimodal
histogram both land in the valley between the modes.
"""

import numpy as np

from ridgekit import binarize, fuzzy_threshold, histogram, otsu

rng = np.random.default_rng(5)
n = 192 * 192
values = np.concatenate([rng.normal(60.0, 15.0, n // 2),
                         rng.normal(180.0, 15.0, n - n // 2)])
img = np.clip(np.round(values), 0, 255).astype(np.uint8).reshape(192, 192)

hist = histogram(img)
modes = np.argsort(hist.counts)[-2:]
print(f"two-gaussian image, modes near levels {sorted(modes.tolist())}")

otsu_result = otsu(hist)
fuzzy_result = fuzzy_threshold(hist, img, pre_equalize="auto")
print(f"otsu threshold:  {otsu_result.level}")
print(f"fuzzy threshold: {fuzzy_result.level} "
      f"(pre-equalized: {fuzzy_result.pre_equalized})")

# sketch the fuzziness curve around its minimum
curve = fuzzy_result.criterion_curve
valid = fuzzy_result.valid
lo = max(fuzzy_result.level - 60, 0)
hi = min(fuzzy_result.level + 61, 256)
print("\nindex of fuzziness, sampled every 10 levels:")
for t in range(lo, hi, 10):
    if not valid[t]:
        continue
    bar = "#" * int(curve[t] * 400)
    marker = " <- chosen" if t == fuzzy_result.level else ""
    print(f"  t={t:3d}  {curve[t]:.4f} {bar}{marker}")

ridge = binarize(img, fuzzy_result.level)
print(f"\nbinarized at the fuzzy level: {np.mean(ridge == 0):.1%} ridge pixels")
