"""Rational maps on the Riemann sphere.

Coefficient arrays are ascending (c[k] multiplies z^k). A map is a coprime
pair num/den with the denominator normalized monic; evaluation, derivatives
and iteration all work chart-wise so poles and infinity need no special
casing by callers. High iterates should be evaluated pointwise (`iterate`)
rather than composed symbolically: coefficient growth of composed iterates
overflows doubles long before the evaluation path has any trouble.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import PreconditionError
from .sphere import RECIPROCAL, STANDARD, SpherePoint, sphere_point

# Normalized Sylvester resultant below this means a numerically common factor.
EPS_COPRIME = 1e-10

# Relative threshold for declaring an evaluation 0/0.
EPS_INDETERMINATE = 1e-13


def _trim(c) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    if c.ndim != 1 or c.size == 0:
        raise PreconditionError("coefficient array must be non-empty and 1-d")
    if not np.all(np.isfinite(c)):
        raise PreconditionError("coefficients must be finite")
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return np.zeros(1, dtype=complex)
    keep = np.nonzero(np.abs(c) > 1e-14 * scale)[0]
    return np.ascontiguousarray(c[: keep[-1] + 1])


class Poly:
    """Polynomial with ascending complex coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = _trim(coeffs)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __call__(self, z):
        return npp.polyval(z, self.c)

    def deriv(self) -> "Poly":
        if self.degree == 0:
            return Poly([0.0])
        return Poly(npp.polyder(self.c))

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(np.convolve(self.c, other.c))
        return Poly(self.c * other)

    __rmul__ = __mul__

    def __add__(self, other):
        a = self.c
        b = other.c if isinstance(other, Poly) else np.atleast_1d(np.asarray(other, dtype=complex))
        n = max(len(a), len(b))
        out = np.zeros(n, dtype=complex)
        out[: len(a)] += a
        out[: len(b)] += b
        return Poly(out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def shifted(self, p: complex) -> "Poly":
        """Coefficients of self(p + u) in u (Taylor shift), via Horner."""
        lin = np.array([p, 1.0], dtype=complex)
        out = np.array([self.c[-1]], dtype=complex)
        for ck in self.c[-2::-1]:
            out = np.convolve(out, lin)
            out[0] += ck
        return Poly(out)

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.array([], dtype=complex)
        return np.roots(self.c[::-1])

    def __repr__(self):
        return f"Poly({np.round(self.c, 12).tolist()})"


def _reversed_padded(c: np.ndarray, d: int) -> np.ndarray:
    """Coefficients of w^d * P(1/w), ascending in w."""
    out = np.zeros(d + 1, dtype=complex)
    out[d - (len(c) - 1) : d + 1] = c[::-1]
    return out


def _sylvester_resultant(a: np.ndarray, b: np.ndarray) -> float:
    """|det Sylvester| of the unit-sup-norm-scaled pair."""
    a = a / np.max(np.abs(a))
    b = b / np.max(np.abs(b))
    m, n = len(a) - 1, len(b) - 1
    if m == 0 or n == 0:
        return 1.0  # a nonzero constant is coprime to everything
    s = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        s[i, i : i + m + 1] = a[::-1]
    for i in range(m):
        s[n + i, i : i + n + 1] = b[::-1]
    return abs(np.linalg.det(s))


class RationalMap:
    """Coprime quotient of polynomials, degree = max of the two degrees."""

    def __init__(self, num, den=(1.0,), check_coprime=True):
        num = num if isinstance(num, Poly) else Poly(num)
        den = den if isinstance(den, Poly) else Poly(den)
        if np.all(den.c == 0):
            raise PreconditionError("denominator is identically zero")
        lead = den.c[-1]
        self.num = Poly(num.c / lead)
        self.den = Poly(den.c / lead)
        self.degree = max(self.num.degree, self.den.degree)
        if self.degree < 1:
            raise PreconditionError("map must have degree >= 1")
        if check_coprime:
            res = _sylvester_resultant(self.num.c, self.den.c)
            if res <= EPS_COPRIME:
                raise PreconditionError(
                    f"num and den share a factor (normalized resultant {res:.2e})"
                )
        d = self.degree
        self._num_rev = _reversed_padded(self.num.c, d)
        self._den_rev = _reversed_padded(self.den.c, d)
        self._dnum = npp.polyder(self.num.c) if self.num.degree else np.zeros(1)
        self._dden = npp.polyder(self.den.c) if self.den.degree else np.zeros(1)
        self._dnum_rev = npp.polyder(self._num_rev)
        self._dden_rev = npp.polyder(self._den_rev)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def _pair(self, pt: SpherePoint):
        v = pt.value
        if pt.chart == STANDARD:
            return v, npp.polyval(v, self.num.c), npp.polyval(v, self.den.c)
        return v, npp.polyval(v, self._num_rev), npp.polyval(v, self._den_rev)

    def _coeff_scale(self, pt: SpherePoint) -> float:
        cmax = max(np.max(np.abs(self.num.c)), np.max(np.abs(self.den.c)))
        return cmax * max(1.0, abs(pt.value)) ** self.degree

    def __call__(self, z) -> SpherePoint:
        pt = sphere_point(z)
        _, n, q = self._pair(pt)
        # Standard chart while |n/q| <= 2, reciprocal beyond; the same rule
        # drives derivative() so cycle multipliers stay chart-consistent.
        if abs(n) <= 2.0 * abs(q):
            # Both tiny relative to the coefficient scale means a 0/0 point;
            # an exact pole (q = 0, n != 0) falls through to the else branch.
            if abs(q) < EPS_INDETERMINATE * self._coeff_scale(pt):
                raise PreconditionError(
                    f"indeterminate point: num and den both vanish near {pt!r}"
                )
            return SpherePoint(STANDARD, n / q)
        return SpherePoint(RECIPROCAL, q / n)

    def derivative(self, z) -> complex:
        """Chart-consistent derivative at z.

        Taken between the chart z was given in and the chart the image lands
        in, so products of this along a cycle form the cycle multiplier no
        matter how the cycle threads through infinity.
        """
        pt = sphere_point(z)
        v = pt.value
        if pt.chart == STANDARD:
            n, q = npp.polyval(v, self.num.c), npp.polyval(v, self.den.c)
            dn, dq = npp.polyval(v, self._dnum), npp.polyval(v, self._dden)
        else:
            n, q = npp.polyval(v, self._num_rev), npp.polyval(v, self._den_rev)
            dn, dq = npp.polyval(v, self._dnum_rev), npp.polyval(v, self._dden_rev)
        w = dn * q - n * dq
        if abs(n) <= 2.0 * abs(q):
            if q == 0:
                raise PreconditionError(f"indeterminate point near {pt!r}")
            return w / (q * q)
        return -w / (n * n)

    def iterate(self, z, n: int) -> SpherePoint:
        pt = sphere_point(z)
        for _ in range(n):
            pt = self(pt)
        return pt

    def compose(self, g: "RationalMap") -> "RationalMap":
        """self after g, expanded in coefficients.

        Degree multiplies for coprime inputs. Raises when coefficients
        overflow; evaluate iterates pointwise instead of composing them when
        that happens.
        """
        d = self.degree
        p = np.zeros(d + 1, dtype=complex)
        q = np.zeros(d + 1, dtype=complex)
        p[: len(self.num.c)] = self.num.c
        q[: len(self.den.c)] = self.den.c
        rpow = [np.ones(1, dtype=complex)]
        spow = [np.ones(1, dtype=complex)]
        for _ in range(d):
            rpow.append(np.convolve(rpow[-1], g.num.c))
            spow.append(np.convolve(spow[-1], g.den.c))
        n = d * g.degree + 1
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        for k in range(d + 1):
            term = np.convolve(rpow[k], spow[d - k])
            a[: len(term)] += p[k] * term
            b[: len(term)] += q[k] * term
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise PreconditionError(
                "coefficient overflow composing maps; iterate by evaluation instead"
            )
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)))
        # Coprimality of a high-degree composed pair is not re-checked: the
        # resultant determinant is meaningless at those sizes.
        check = (d * g.degree) <= 16
        return RationalMap(a / scale, b / scale, check_coprime=check)

    def self_compose(self, n: int) -> "RationalMap":
        """n-fold composition of self with itself (n >= 1)."""
        if n < 1:
            raise PreconditionError("need n >= 1")
        out = self
        for _ in range(n - 1):
            out = self.compose(out)
        return out

    def critical_points(self) -> np.ndarray:
        """Finite critical points (roots of num' den - num den')."""
        w = Poly(np.convolve(self._dnum, self.den.c)) - Poly(
            np.convolve(self.num.c, self._dden)
        )
        return w.roots()

    def __repr__(self):
        if self.is_polynomial:
            return f"RationalMap({self.num!r})"
        return f"RationalMap({self.num!r} / {self.den!r})"


def polynomial_map(coeffs) -> RationalMap:
    return RationalMap(coeffs)
