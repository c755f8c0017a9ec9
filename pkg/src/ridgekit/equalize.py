"""Global and tile-based local histogram equalization.

A level mapping is a 256-entry uint8 lookup table. Global equalization
derives it from the image's cumulative distribution; the local variant
computes one table per tile and blends the four nearest tile-center
tables bilinearly per pixel, which removes the blocking artifacts of
naive per-tile equalization while staying fully deterministic.
"""

import numpy as np

from .image import LEVELS, as_gray, histogram, round_half_away


def ghe_mapping(hist):
    """Monotone 256-entry lookup table from a histogram's CDF."""
    total = hist.total
    if total == 0:
        raise ValueError("cannot equalize an empty histogram")
    cum = np.cumsum(hist.counts)
    # multiply before dividing: exact integers keep half-values exact
    return round_half_away(cum * 255.0 / total).astype(np.uint8)


def apply_mapping(image, mapping):
    """Remap every pixel through a 256-entry lookup table."""
    img = as_gray(image)
    table = np.asarray(mapping)
    if table.shape != (LEVELS,):
        raise ValueError(f"mapping must have {LEVELS} entries, got shape {table.shape}")
    return table.astype(np.uint8)[img]


def ghe(image):
    """Global histogram equalization."""
    img = as_gray(image)
    return apply_mapping(img, ghe_mapping(histogram(img)))


def _tile_mappings(img, tile):
    height, width = img.shape
    n_y = -(-height // tile)
    n_x = -(-width // tile)
    tables = np.empty((n_y, n_x, LEVELS))
    centers_y = np.empty(n_y)
    centers_x = np.empty(n_x)
    for iy in range(n_y):
        y0, y1 = iy * tile, min((iy + 1) * tile, height)
        centers_y[iy] = (y0 + y1 - 1) / 2.0
        for ix in range(n_x):
            x0, x1 = ix * tile, min((ix + 1) * tile, width)
            centers_x[ix] = (x0 + x1 - 1) / 2.0
            tables[iy, ix] = ghe_mapping(histogram(img[y0:y1, x0:x1]))
    return tables, centers_y, centers_x


def _blend_tables(img, tables, centers_y, centers_x):
    height, width = img.shape
    fy = np.interp(np.arange(height), centers_y, np.arange(len(centers_y)))
    fx = np.interp(np.arange(width), centers_x, np.arange(len(centers_x)))
    iy0 = np.floor(fy).astype(int)
    ix0 = np.floor(fx).astype(int)
    wy = (fy - iy0)[:, None]
    wx = (fx - ix0)[None, :]
    iy1 = np.minimum(iy0 + 1, len(centers_y) - 1)
    ix1 = np.minimum(ix0 + 1, len(centers_x) - 1)

    top = ((1.0 - wx) * tables[iy0[:, None], ix0[None, :], img]
           + wx * tables[iy0[:, None], ix1[None, :], img])
    bottom = ((1.0 - wx) * tables[iy1[:, None], ix0[None, :], img]
              + wx * tables[iy1[:, None], ix1[None, :], img])
    out = (1.0 - wy) * top + wy * bottom
    return np.clip(round_half_away(out), 0.0, 255.0).astype(np.uint8)


def lhe(image, tile=16):
    """Local histogram equalization over a grid of ``tile``-sized tiles.

    ``tile`` must be an even integer with 2 <= tile <= min(width, height);
    edge tiles are allowed to be smaller. One tile covering the whole
    image reduces this to :func:`ghe`.
    """
    img = as_gray(image)
    height, width = img.shape
    if tile < 2 or tile % 2 or tile > min(height, width):
        raise ValueError(
            f"tile must be an even integer in [2, {min(height, width)}], got {tile}")
    tables, centers_y, centers_x = _tile_mappings(img, tile)
    return _blend_tables(img, tables, centers_y, centers_x)
