"""Koenigs linearization at repelling fixed points, with two exact anchors.

z^2 at p = 1 linearizes to psi(zeta) = e^zeta and z^2 - 2 at p = 2 to
psi(zeta) = 2 cosh(sqrt(zeta)); both satisfy psi(lambda zeta) = f(psi(zeta))
with lambda = f'(p). The series itself only converges so far, but the
functional equation extends the evaluation arbitrarily far out by pulling
zeta back under lambda and pushing the value forward with f.
"""

import math

import numpy as np

from holoscope import (
    chordal,
    eval_generalized,
    eval_linearizer,
    generalized_koenigs,
    koenigs_series,
    polynomial_map,
)

squaring = polynomial_map([0.0, 0.0, 1.0])
cheb = polynomial_map([-2.0, 0.0, 1.0])

L = koenigs_series(squaring, 1.0, trunc=24)
print("z^2 at p=1: lambda =", L.lam, " trust radius =", L.trust_radius)
print("coefficient vs 1/n!:")
for n in (0, 1, 2, 5, 10, 19):
    print(f"  n={n:2d}  computed {L.coeffs[n].real: .3e}   "
          f"exact {1.0 / math.factorial(n): .3e}")

M = koenigs_series(cheb, 2.0, trunc=24)
err = max(abs(M.coeffs[n] - 2.0 / math.factorial(2 * n)) for n in range(20))
print(f"\nz^2-2 at p=2: lambda = {M.lam}, max coeff error vs 2/(2n)! = {err:.2e}")

# evaluation far beyond the certified disk, checked against e^zeta
zeta = 40.0 * np.exp(0.3j)
got = eval_linearizer(L, squaring, zeta)
print(f"\npsi({zeta:.1f}) via pullback: chordal error vs e^zeta =",
      chordal(got, np.exp(zeta)))

# the generalized form chi(zeta) = psi(beta zeta^ell) obeys a twisted
# equation with kappa an ell-th root of lambda
G = generalized_koenigs(squaring, 1.0, ell=2, beta=1.0)
z = 0.4 + 0.2j
lhs = squaring(eval_generalized(G, squaring, z))
rhs = eval_generalized(G, squaring, G.kappa * z)
print(f"generalized equation residual at zeta = {z}: {chordal(lhs, rhs):.2e}")
