"""Automatic threshold selection and ridge/valley binarization.

Two selectors are provided. Otsu's method maximizes the between-class
variance of the two-class split. The fuzzy selector assigns every gray
level a membership towards its class mean, scores each candidate split
by the linear index of fuzziness (how far the membership assignment is
from a crisp partition), and keeps the split where the image looks
least fuzzy -- for a bimodal histogram that is the valley between the
modes. Both selectors break ties towards the smallest level.
"""

from dataclasses import dataclass

import numpy as np

from .equalize import apply_mapping, ghe_mapping
from .image import LEVELS, as_gray, histogram, metrics

DEFAULT_RMS_TRIGGER = 20.0
DEFAULT_RANGE_TRIGGER = 128


class NoDichotomyError(ValueError):
    """The histogram occupies fewer than two gray levels."""


@dataclass(frozen=True)
class FuzzyMembershipParams:
    """Bandwidth constant of the reciprocal-distance membership function."""

    bandwidth: float = 255.0

    def __post_init__(self):
        if not (self.bandwidth > 0 and np.isfinite(self.bandwidth)):
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")


@dataclass(frozen=True)
class ThresholdResult:
    """Chosen level plus the full criterion curve it was picked from.

    ``criterion_curve[t]`` is the objective at candidate ``t`` and is only
    meaningful where ``valid[t]`` is True (a candidate is invalid when one
    of its two classes would be empty; those entries hold 0.0). When the
    fuzzy selector pre-equalized, the curve describes the equalized
    histogram while ``level`` has already been mapped back to the
    original image's levels.
    """

    level: int
    criterion_curve: np.ndarray
    valid: np.ndarray
    pre_equalized: bool = False


def _require_dichotomy(hist):
    if hist.total == 0 or int(np.count_nonzero(hist.counts)) < 2:
        raise NoDichotomyError("histogram needs at least two occupied levels")


def _class_split(counts):
    # Exact integer cumulatives; validity never suffers float fuzz.
    total = int(counts.sum())
    below = np.cumsum(counts)
    weighted = np.cumsum(counts * np.arange(LEVELS, dtype=np.int64))
    valid = (below > 0) & (below < total)
    w0 = below / total
    with np.errstate(divide="ignore", invalid="ignore"):
        m0 = np.where(below > 0, weighted / below, 0.0)
        m1 = np.where(below < total, (weighted[-1] - weighted) / (total - below), 0.0)
    return total, valid, w0, m0, m1


def otsu(hist):
    """Threshold maximizing the between-class variance of the split."""
    _require_dichotomy(hist)
    _, valid, w0, m0, m1 = _class_split(hist.counts)
    gap = m1 - m0
    curve = np.where(valid, w0 * (1.0 - w0) * (gap * gap), 0.0)
    level = int(np.argmax(np.where(valid, curve, -np.inf)))
    return ThresholdResult(level=level, criterion_curve=curve, valid=valid)


def _fuzziness_curve(counts, bandwidth):
    total, valid, _, m0, m1 = _class_split(counts)
    levels = np.arange(LEVELS, dtype=np.float64)
    below = levels[None, :] <= levels[:, None]
    membership = np.where(
        below,
        1.0 / (1.0 + np.abs(levels[None, :] - m0[:, None]) / bandwidth),
        1.0 / (1.0 + np.abs(levels[None, :] - m1[:, None]) / bandwidth),
    )
    crisp_distance = np.minimum(membership, 1.0 - membership)
    gamma = (2.0 / total) * (crisp_distance @ counts.astype(np.float64))
    return np.where(valid, gamma, 0.0), valid


def fuzzy_threshold(hist, source, params=None, pre_equalize="auto",
                    rms_trigger=DEFAULT_RMS_TRIGGER,
                    range_trigger=DEFAULT_RANGE_TRIGGER):
    """Threshold minimizing the linear index of fuzziness.

    ``pre_equalize`` may be ``"on"``, ``"off"`` or ``"auto"``; auto fires
    when the source image is low-contrast (RMS contrast below
    ``rms_trigger`` or dynamic range below ``range_trigger``). When
    pre-equalization fires, the curve is computed on the globally
    equalized histogram and the winning level is mapped back through the
    inverse of the equalization table, so it applies to ``source`` as-is.
    """
    if pre_equalize not in ("auto", "on", "off"):
        raise ValueError(f"pre_equalize must be auto/on/off, got {pre_equalize!r}")
    params = params if params is not None else FuzzyMembershipParams()
    src = as_gray(source)

    mapping = None
    if pre_equalize == "on":
        fire = True
    elif pre_equalize == "auto":
        stats = metrics(src)
        fire = stats.rms_contrast < rms_trigger or stats.dynamic_range < range_trigger
    else:
        fire = False
    if fire:
        mapping = ghe_mapping(histogram(src))
        hist = histogram(apply_mapping(src, mapping))

    _require_dichotomy(hist)
    curve, valid = _fuzziness_curve(hist.counts, params.bandwidth)
    level = int(np.argmin(np.where(valid, curve, np.inf)))
    if mapping is not None:
        # smallest original level whose equalized value reaches the cut
        level = int(np.argmax(mapping.astype(np.int64) >= level))
    return ThresholdResult(level=level, criterion_curve=curve, valid=valid,
                           pre_equalized=mapping is not None)


def binarize(image, level):
    """Split pixels at ``level``: values <= level go to 0, the rest to 255."""
    img = as_gray(image)
    if not 0 <= int(level) <= 255:
        raise ValueError(f"threshold level must be in [0, 255], got {level}")
    return np.where(img <= level, 0, 255).astype(np.uint8)
