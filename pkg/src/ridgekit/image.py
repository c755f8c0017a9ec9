"""Grayscale image values, histograms, and image quality metrics.

Images are 2D uint8 numpy arrays (shape ``(height, width)``, values in
[0, 255]); real-valued planes are 2D float64 arrays of the same layout.
Everything in this module is a pure function on those carriers.
"""

from dataclasses import dataclass

import numpy as np

LEVELS = 256


def round_half_away(values):
    """Round to the nearest integer, with halves rounded away from zero.

    This is the single quantization rule used everywhere a real value is
    mapped back to an 8-bit level (numpy's default rounds halves to even,
    which would make golden values drift).
    """
    values = np.asarray(values, dtype=np.float64)
    return np.copysign(np.floor(np.abs(values) + 0.5), values)


def as_gray(pixels):
    """Validate ``pixels`` as a grayscale image and return it as 2D uint8."""
    arr = np.asarray(pixels)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D gray image, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image dimensions must be at least 1x1")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"gray image needs integer pixels, got dtype {arr.dtype}")
    if int(arr.min()) < 0 or int(arr.max()) > 255:
        raise ValueError("gray values must lie in [0, 255]")
    return arr.astype(np.uint8)


@dataclass(frozen=True)
class Histogram:
    """Occurrence counts of the 256 gray levels of one image."""

    counts: np.ndarray  # (256,) non-negative int64

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (LEVELS,) or (counts < 0).any():
            raise ValueError(f"counts must be {LEVELS} non-negative integers")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def probabilities(self):
        """Counts normalized to a probability distribution over levels."""
        total = self.total
        if total == 0:
            raise ValueError("empty histogram has no probability view")
        return self.counts / total

    @property
    def cdf(self):
        """Cumulative distribution; non-decreasing, ends at 1."""
        return np.cumsum(self.probabilities)


def histogram(image):
    """Count how many pixels sit at each of the 256 gray levels."""
    img = as_gray(image)
    counts = np.bincount(img.ravel(), minlength=LEVELS).astype(np.int64)
    return Histogram(counts)


@dataclass(frozen=True)
class ImageMetrics:
    """Summary statistics used to compare enhancement methods."""

    mean: float
    rms_contrast: float   # population standard deviation of intensities
    dynamic_range: int    # max - min intensity
    entropy: float        # Shannon entropy of the level distribution, bits


def metrics(image):
    """Compute :class:`ImageMetrics` for an image."""
    img = as_gray(image)
    px = img.astype(np.float64)
    mean = float(px.mean())
    rms = float(np.sqrt(np.mean((px - mean) ** 2)))
    dyn = int(px.max() - px.min())
    p = histogram(img).probabilities
    p = p[p > 0]
    ent = float(-np.sum(p * np.log2(p)))
    return ImageMetrics(mean=mean, rms_contrast=rms, dynamic_range=dyn, entropy=ent)


def to_real(image):
    """Lift an 8-bit image into a float64 plane for transform-domain work."""
    return as_gray(image).astype(np.float64)


def as_plane(values):
    """Validate ``values`` as a finite 2D float64 plane."""
    plane = np.asarray(values, dtype=np.float64)
    if plane.ndim != 2:
        raise ValueError(f"expected a 2D plane, got shape {plane.shape}")
    if plane.shape[0] < 1 or plane.shape[1] < 1:
        raise ValueError("plane dimensions must be at least 1x1")
    if not np.isfinite(plane).all():
        raise ValueError("plane contains non-finite values")
    return plane


def from_real(plane, mode="clamp"):
    """Quantize a real plane back to an 8-bit image.

    ``clamp`` rounds each value (halves away from zero) and clips to
    [0, 255]. ``rescale`` maps [min, max] affinely onto [0, 255] before
    rounding; a constant plane maps to mid-gray 128.
    """
    plane = as_plane(plane)
    if mode == "clamp":
        out = np.clip(round_half_away(plane), 0.0, 255.0)
    elif mode == "rescale":
        lo = plane.min()
        hi = plane.max()
        if hi == lo:
            return np.full(plane.shape, 128, dtype=np.uint8)
        # multiply before dividing so exact halves stay exact
        out = np.clip(round_half_away((plane - lo) * 255.0 / (hi - lo)), 0.0, 255.0)
    else:
        raise ValueError(f"unknown requantization mode {mode!r}")
    return out.astype(np.uint8)
