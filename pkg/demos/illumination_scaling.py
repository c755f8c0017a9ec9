"""Run the full enhancement pipeline on a poor-quality synthetic print.

The approximation band of the wavelet split carries the illumination;
rebuilding it with all singular values multiplied by the xi ratio
flattens that illumination while the detail bands (the ridges) pass
through untouched. Rescaling the result to the full 8-bit range makes
the recovered ridge contrast visible.
"""

import os

import numpy as np

from ridgekit import XiMode, enhance, generate_fingerprint_like, write_pgm

img = generate_fingerprint_like(128, 128, ridge_period=4.0,
                                contrast=(100, 150), noise_sigma=15.0, seed=7)

result = enhance(img, XiMode.deterministic(), requantize="rescale")

print("poor-quality input (intensity band 100..150, heavy noise):")
print(f"  mean {result.input_metrics.mean:6.1f}   "
      f"rms contrast {result.input_metrics.rms_contrast:5.1f}   "
      f"dynamic range {result.input_metrics.dynamic_range:3d}   "
      f"entropy {result.input_metrics.entropy:.2f}")
print(f"\nxi = {result.xi:.6f}  (tiny: the illumination component is huge "
      "next to a unit-variance matrix)")
print(f"ridge/valley threshold chosen at level {result.threshold}")
print("\nenhanced output:")
print(f"  mean {result.output_metrics.mean:6.1f}   "
      f"rms contrast {result.output_metrics.rms_contrast:5.1f}   "
      f"dynamic range {result.output_metrics.dynamic_range:3d}   "
      f"entropy {result.output_metrics.entropy:.2f}")

out_dir = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(out_dir, exist_ok=True)
for name, image in (("poor_input.pgm", img),
                    ("poor_enhanced.pgm", result.enhanced),
                    ("poor_ridge_map.pgm", result.ridge_map)):
    path = os.path.join(out_dir, name)
    with open(path, "wb") as fh:
        fh.write(write_pgm(image))
    print(f"wrote {path}")

share = np.mean(result.ridge_map == 0)
print(f"\nridge map: {share:.1%} of pixels classified as ridge")
