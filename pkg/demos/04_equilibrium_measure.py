"""The measure of maximal entropy by inverse iteration, and its Green function.

For z^2 the equilibrium measure is arclength on the unit circle and
G(z) = log|z| outside; for z^2 - 2 it is the arcsine distribution on
[-2, 2]. Both are reproduced from uniform backward iteration, and the
invariance f*mu = mu is checked by pushing the sample forward.
"""

import math

import numpy as np

from holoscope import (
    green_function,
    measure_compare,
    polynomial_map,
    pushforward_measure,
    sample_mmem,
)

squaring = polynomial_map([0.0, 0.0, 1.0])
cheb = polynomial_map([-2.0, 0.0, 1.0])

print("Green function of z^2 (exact: log|z|):")
for z in (2.0, 5.0, 1.0 + 1.0j):
    g = green_function(squaring, z)
    print(f"  G({z}) = {g.value:.12f}   log|z| = {math.log(abs(complex(z))):.12f}")

print("\nGreen function of z^2 - 2 at 3 (exact: log golden-ish ratio):")
want = math.log((3 + math.sqrt(5)) / 2)
print(f"  G(3) = {green_function(cheb, 3.0).value:.12f}   exact {want:.12f}")

mu = sample_mmem(squaring, 50_000, seed=1)
r = np.abs(mu.points)
print(f"\nz^2 sample: {len(mu)} points, max | |z|-1 | = {np.max(np.abs(r - 1)):.1e}")

nu = sample_mmem(cheb, 50_000, seed=2)
x = nu.points.real
print("z^2-2 sample quartiles:", np.round(np.quantile(x, [0.25, 0.5, 0.75]), 4),
      " (arcsine gives [-1.414, 0, 1.414])")

fmu = pushforward_measure(squaring, mu)
rep = measure_compare(mu, fmu, (-1.3, 1.3, -1.3, 1.3), bins=32)
print(f"\ninvariance: TV(mu, f*mu) over a 32x32 window = {rep.tv:.4f}")
