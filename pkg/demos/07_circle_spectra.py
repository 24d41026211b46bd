"""Lyapunov spectra of expanding Blaschke products and the rigidity gap.

z -> z^d restricted to the circle has every periodic exponent equal to
log d: the spectrum is a single atom. Perturbing one zero off the origin
spreads the exponents into an interval that fills in as deeper periods
are included. The one-atom case is the rigid one; the verdict machinery
separates the two from finitely many cycles.
"""

import numpy as np

from holoscope import (
    BlaschkeProduct,
    lyapunov_spectrum,
    rigidity_verdict,
    spectrum_interval_check,
)

cubic = BlaschkeProduct(np.zeros(3))
S = lyapunov_spectrum(cubic, 6)
print("z^3: periods 1..6 hold", sum(S.census.values()), "periodic angles;")
print("  exponent range:",
      f"[{S.exponents().min():.12f}, {S.exponents().max():.12f}]",
      " (log 3 =", f"{np.log(3.0):.12f})")
print("  verdict:", rigidity_verdict(S).verdict)

B = BlaschkeProduct(np.array([0.0, 0.5]))
T = lyapunov_spectrum(B, 6)
rep = rigidity_verdict(T)
print(f"\nzeros (0, 0.5): spread = {rep.spread:.3f}, verdict {rep.verdict}")

print("largest spectral gap as deeper periods fill the interval:")
for n in (5, 6, 8, 10):
    chk = spectrum_interval_check(lyapunov_spectrum(B, n))
    print(f"  n_max = {n:2d}: gap {chk.largest_gap:.4f} "
          f"on [{chk.lo:.3f}, {chk.hi:.3f}], {chk.occupancy} cells occupied")

bad = BlaschkeProduct(np.array([0.9, -0.9]))
print(f"\nzeros (0.9, -0.9): min |B'| on the circle = {bad.min_deriv:.4f} "
      f"-> expanding = {bad.expanding} (spectrum refused)")
