"""Points on the Riemann sphere and the chordal metric.

A point is stored in one of two affine charts: ``standard`` holds z itself,
``reciprocal`` holds 1/z (so infinity is the reciprocal chart's origin).
Representatives are kept at modulus <= 2; both charts are valid on the
overlap 0.5 <= |z| <= 2, and chart choice never affects distances.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import PreconditionError

STANDARD = "standard"
RECIPROCAL = "reciprocal"

# Representatives switch charts beyond this modulus.
CHART_BOUND = 2.0


@dataclass(frozen=True)
class SpherePoint:
    chart: str
    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise PreconditionError("sphere point needs a finite representative")
        if self.chart not in (STANDARD, RECIPROCAL):
            raise PreconditionError(f"unknown chart {self.chart!r}")
        if abs(v) > CHART_BOUND + 1e-12:
            raise PreconditionError(
                f"representative modulus {abs(v):.3g} exceeds chart bound {CHART_BOUND}"
            )
        object.__setattr__(self, "value", v)

    @property
    def is_infinity(self) -> bool:
        return self.chart == RECIPROCAL and self.value == 0

    def to_complex(self) -> complex:
        """Standard-chart value; raises for infinity."""
        if self.chart == STANDARD:
            return self.value
        if self.value == 0:
            raise PreconditionError("point at infinity has no standard-chart value")
        return 1.0 / self.value

    def __repr__(self):
        if self.is_infinity:
            return "SpherePoint(inf)"
        if self.chart == STANDARD:
            return f"SpherePoint({self.value!r})"
        return f"SpherePoint(1/{self.value!r})"


INF = SpherePoint(RECIPROCAL, 0.0)


def sphere_point(z) -> SpherePoint:
    """Wrap a complex number (or existing point) choosing the chart by modulus."""
    if isinstance(z, SpherePoint):
        return z
    if z is None:
        return INF
    z = complex(z)
    if math.isinf(abs(z)) or cmath.isnan(z):
        if cmath.isnan(z):
            raise PreconditionError("nan is not a sphere point")
        return INF
    if abs(z) <= CHART_BOUND:
        return SpherePoint(STANDARD, z)
    return SpherePoint(RECIPROCAL, 1.0 / z)


def chordal(a, b) -> float:
    """Chordal distance |z-w| / sqrt((1+|z|^2)(1+|w|^2)), diameter 1.

    The metric is invariant under z -> 1/z, which is what makes the
    mixed-chart formula below exact: d(z, 1/w) = |zw - 1| / sqrt(...).
    """
    a = sphere_point(a)
    b = sphere_point(b)
    u, v = a.value, b.value
    denom = math.sqrt((1.0 + abs(u) ** 2) * (1.0 + abs(v) ** 2))
    if a.chart == b.chart:
        return abs(u - v) / denom
    return abs(u * v - 1.0) / denom
