"""Two expansion diagnostics: backward shrinking disks and ball scaling.

shrink_rate_estimate pulls a small disk back along random inverse
branches and fits the decay rate of the surviving components; on the
unit circle of z^2 the derivative has constant modulus 2, so the fitted
rate lands there. measure_ball_scaling reads local dimension off an
empirical measure: arclength scales like r at interior points of [-2, 2]
and like r^(1/2) at the endpoint, where the arcsine density blows up.
"""

import numpy as np

from holoscope import (
    measure_ball_scaling,
    polynomial_map,
    sample_mmem,
    shrink_rate_estimate,
)

squaring = polynomial_map([0.0, 0.0, 1.0])
cheb = polynomial_map([-2.0, 0.0, 1.0])

est = shrink_rate_estimate(squaring, 1.0, 0.05, n_max=12, seed=1)
print("backward shrinking of B(1, 0.05) under z^2:")
for n in (1, 4, 8, 12):
    print(f"  n = {n:2d}: diameter {est.diam_by_n[n - 1]:.3e}, "
          f"{est.branch_count_by_n[n - 1]} branches alive")
print(f"fitted rate: {est.fitted_rate:.4f}  (derivative modulus on J is 2)")

mu = sample_mmem(cheb, 200_000, seed=2)
radii = np.geomspace(3e-3, 0.3, 9)
rep = measure_ball_scaling(mu, [0.0 + 0j, 2.0 + 0j, 5.0 + 0j], radii)
print("\nball-scaling exponents for the arcsine measure on [-2, 2]:")
for pt, s in rep.per_point:
    label = "flagged (no mass nearby)" if s is None else f"{s:.3f}"
    print(f"  at {complex(pt).real:4.1f}: {label}")
print(f"pooled estimate theta_hat = {rep.theta_hat:.3f}")
