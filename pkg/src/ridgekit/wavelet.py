"""Single-level 2D orthonormal Haar transform with perfect reconstruction.

The 1D analysis step maps each pair (a, b) to the approximation
(a + b)/sqrt(2) and the detail (a - b)/sqrt(2). Rows (the horizontal
direction) are filtered first, then columns, giving four subbands:

* ``ll`` -- approximation in both directions (illumination content)
* ``hl`` -- horizontal detail, vertical approximation
* ``lh`` -- horizontal approximation, vertical detail
* ``hh`` -- detail in both directions

Odd-length axes are extended by one sample with whole-point symmetry
(the value before the edge) before the pair step; the inverse truncates
back to the source size, so reconstruction stays exact either way.
"""

from dataclasses import dataclass

import numpy as np

from .image import as_plane

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SubbandSet:
    """The four subbands of one decomposition plus the source size."""

    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray
    source_height: int
    source_width: int


def _analyze(values, axis):
    n = values.shape[axis]
    if n % 2:
        edge = values[:, n - 2:n - 1] if axis == 1 else values[n - 2:n - 1, :]
        values = np.concatenate([values, edge], axis=axis)
    if axis == 1:
        even, odd = values[:, 0::2], values[:, 1::2]
    else:
        even, odd = values[0::2, :], values[1::2, :]
    return (even + odd) / _SQRT2, (even - odd) / _SQRT2


def _synthesize(lo, hi, axis, size):
    if axis == 1:
        out = np.empty((lo.shape[0], 2 * lo.shape[1]))
        out[:, 0::2] = (lo + hi) / _SQRT2
        out[:, 1::2] = (lo - hi) / _SQRT2
        return out[:, :size]
    out = np.empty((2 * lo.shape[0], lo.shape[1]))
    out[0::2, :] = (lo + hi) / _SQRT2
    out[1::2, :] = (lo - hi) / _SQRT2
    return out[:size, :]


def dwt2(plane):
    """Split a plane into its four single-level Haar subbands."""
    plane = as_plane(plane)
    height, width = plane.shape
    if height < 2 or width < 2:
        raise ValueError(f"plane must be at least 2x2, got {height}x{width}")
    lo, hi = _analyze(plane, axis=1)
    ll, lh = _analyze(lo, axis=0)
    hl, hh = _analyze(hi, axis=0)
    return SubbandSet(ll=ll, lh=lh, hl=hl, hh=hh,
                      source_height=height, source_width=width)


def idwt2(subbands):
    """Reconstruct the source plane from a :class:`SubbandSet` exactly."""
    shape = subbands.ll.shape
    for name in ("lh", "hl", "hh"):
        if getattr(subbands, name).shape != shape:
            raise ValueError("mismatched subband dimensions")
    expected = ((subbands.source_height + 1) // 2, (subbands.source_width + 1) // 2)
    if shape != expected:
        raise ValueError(
            f"subband shape {shape} inconsistent with source "
            f"{subbands.source_height}x{subbands.source_width}")
    lo = _synthesize(subbands.ll, subbands.lh, axis=0, size=subbands.source_height)
    hi = _synthesize(subbands.hl, subbands.hh, axis=0, size=subbands.source_height)
    return _synthesize(lo, hi, axis=1, size=subbands.source_width)
