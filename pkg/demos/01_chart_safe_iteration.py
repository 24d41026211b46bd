"""Iterating a rational map straight through the point at infinity.

The map f(z) = (z^2 + 2) / (2z) sends 0 to infinity and infinity to
itself. Working with raw complex numbers, the orbit of any point near 0
would blow up to inf/nan within two steps. Points here carry a chart tag
(standard or reciprocal) and evaluation switches representation whenever
the image modulus would exceed 2, so orbits thread the pole without any
special casing by the caller.
"""

import numpy as np

from holoscope import INF, RationalMap, chordal, sphere_point

f = RationalMap([2.0, 0.0, 1.0], [0.0, 2.0])

print("f =", f)
print("f(0)    =", f(0.0))
print("f(inf)  =", f(INF))
print("f(1e12) =", f(1e12))

print("\norbit of z0 = 0.001 (passes within 1e-3 of the pole):")
z = sphere_point(0.001)
for k in range(6):
    print(f"  step {k}: {z!r}")
    z = f(z)

# the orbit converges to the superattracting fixed point sqrt(2)
print("\ndistance to sqrt(2) after 12 steps:")
z = sphere_point(0.001)
for _ in range(12):
    z = f(z)
print("  chordal distance:", chordal(z, np.sqrt(2.0)))

# multipliers are chart-consistent: the derivative at infinity is taken
# in the reciprocal chart, where it is an honest number
print("\nmultiplier at the repelling fixed point infinity:", f.derivative(INF))
