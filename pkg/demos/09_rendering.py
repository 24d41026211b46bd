"""Render the basilica two ways: escape-time bands and measure density.

Writes plain PPM (P6) files next to this script. The escape renderer
colors the complement of the filled Julia set by log2 of the Green
function, so each band is one halving of the escape rate; the density
renderer is a log-scaled 2-D histogram of an inverse-iteration sample.
"""

import os

import numpy as np

from holoscope import polynomial_map, sample_mmem
from holoscope.io import write_ppm
from holoscope.render import render_density, render_escape

here = os.path.dirname(os.path.abspath(__file__))
basilica = polynomial_map([-1.0, 0.0, 1.0])

img = render_escape(basilica, (-1.8, 1.8, -1.2, 1.2), (900, 600))
path = os.path.join(here, "basilica_escape.ppm")
write_ppm(path, img)
print("wrote", path, img.shape)

mu = sample_mmem(basilica, 400_000, seed=7)
img2 = render_density(mu, (-1.8, 1.8, -1.2, 1.2), (900, 600))
path2 = os.path.join(here, "basilica_density.ppm")
write_ppm(path2, img2)
print("wrote", path2, img2.shape)

on_set = np.mean(np.all(img == 0, axis=2))
print(f"{100 * on_set:.1f}% of pixels are interior/boundary (rendered black)")
