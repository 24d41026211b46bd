"""Raster views: escape-time bands of the basin, measure density heat.

Escape rendering colors each pixel by a band index derived from the Green
value, black inside the filled Julia set. Density rendering log-scales a
weighted 2D histogram of a sampled measure. Both return (h, w, 3) uint8
arrays; PPM serialization lives in io.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .maps import RationalMap
from .measures import EmpiricalMeasure, _green_values, escape_radius

# six-band palette cycling outward from the Julia set
PALETTE = np.array(
    [
        [40, 40, 120],
        [50, 80, 170],
        [70, 130, 200],
        [110, 180, 220],
        [170, 220, 235],
        [230, 245, 250],
    ],
    dtype=np.uint8,
)


def _pixel_grid(window, pixels):
    xmin, xmax, ymin, ymax = map(float, window)
    w, h = int(pixels[0]), int(pixels[1])
    if w < 1 or h < 1:
        raise PreconditionError("pixel dimensions must be positive")
    if not (xmax > xmin and ymax > ymin):
        raise PreconditionError("window must be a nondegenerate rectangle")
    xs = xmin + (np.arange(w) + 0.5) * (xmax - xmin) / w
    ys = ymax - (np.arange(h) + 0.5) * (ymax - ymin) / h  # row 0 at the top
    return xs, ys, w, h


def render_escape(f: RationalMap, window, pixels, n_max: int = 200) -> np.ndarray:
    """Green-value bands outside, black inside the filled Julia set."""
    if not f.is_polynomial:
        raise PreconditionError("escape-time rendering needs a polynomial map")
    xs, ys, w, h = _pixel_grid(window, pixels)
    zz = (xs[None, :] + 1j * ys[:, None]).ravel()
    g, _ = _green_values(f, zz, n_max, escape_radius(f))
    img = np.zeros((len(zz), 3), dtype=np.uint8)
    outside = g > 0
    if outside.any():
        band = np.floor(-np.log2(g[outside])).astype(int)
        img[outside] = PALETTE[np.abs(band) % len(PALETTE)]
    return img.reshape(h, w, 3)


def render_density(mu: EmpiricalMeasure, window, pixels) -> np.ndarray:
    """Log-scaled weighted histogram of the sample cloud, white on black."""
    xs, ys, w, h = _pixel_grid(window, pixels)
    xmin, xmax, ymin, ymax = map(float, window)
    hist, _, _ = np.histogram2d(
        mu.points.real,
        mu.points.imag,
        bins=[w, h],
        range=[[xmin, xmax], [ymin, ymax]],
        weights=mu.weights,
    )
    # histogram2d puts x on axis 0; flip y so row 0 is the top of the window
    grid = hist.T[::-1, :]
    peak = grid.max()
    if peak <= 0:
        raise PreconditionError("measure has no mass in the render window")
    v = np.log1p(grid / peak * 255.0) / np.log1p(255.0)
    channel = (v * 255.0).astype(np.uint8)
    return np.stack([channel, channel, channel], axis=-1)
