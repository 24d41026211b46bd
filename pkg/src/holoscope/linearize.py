"""Koenigs linearizers at repelling periodic points.

The series psi solves f(psi(zeta)) = psi(lambda * zeta) with psi(0) = p and
psi'(0) = 1. Coefficients come from the triangular recursion

    (lambda^n - lambda) c_n = [zeta^n] f(p + w(zeta)),  w = psi - p,

where the bracket only involves c_2 .. c_{n-1}. The certified trust radius
is the largest dyadic rho where the functional-equation residual over 64
boundary samples stays below 1e-8; evaluation beyond it pulls the argument
back with powers of lambda and pushes forward with f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npp

from ._series import ps_mul, ps_polyval, ps_recip
from .errors import PreconditionError
from .maps import RationalMap
from .sphere import RECIPROCAL, STANDARD, SpherePoint, chordal, sphere_point

TRUNC_DEFAULT = 64
TRUNC_MAX = 512
RESIDUAL_TOL = 1e-8
FIXED_POINT_TOL = 1e-9
BOUNDARY_SAMPLES = 64


@dataclass(frozen=True)
class Linearizer:
    base: SpherePoint
    lam: complex
    coeffs: np.ndarray          # psi series in the working chart, ascending
    trust_radius: float
    residual_at_trust: float
    conjugated: bool = False    # True when base is infinity (work chart is 1/z)

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class GeneralizedLinearizer:
    """chi(zeta) = psi(beta * zeta^ell), satisfying f(chi(z)) = chi(kappa z)."""

    inner: Linearizer
    ell: int
    beta: complex
    kappa: complex
    root_index: int


def _invert_map(f: RationalMap) -> RationalMap:
    """Conjugate of f by z -> 1/z."""
    return RationalMap(f._den_rev.copy(), f._num_rev.copy(), check_coprime=False)


def _standard_multiplier(f: RationalMap, p: complex) -> complex:
    num, den = f.num, f.den
    q = den(p)
    if q == 0:
        raise PreconditionError("fixed point sits on a pole")
    return (num.deriv()(p) * q - num(p) * den.deriv()(p)) / (q * q)


def _series_point(L: Linearizer, value: complex) -> SpherePoint:
    """Interpret a working-chart series value as a sphere point."""
    if L.conjugated:
        if abs(value) <= 2.0:
            return SpherePoint(RECIPROCAL, value)
        return SpherePoint(STANDARD, 1.0 / value)
    return sphere_point(value)


def _side_residual(a: SpherePoint, b: SpherePoint) -> float:
    """Chordal distance, sharpened by a scale-relative deviation.

    Pure chordal residuals degenerate near infinity (any two huge values
    look close), which would let the trust sweep certify radii where the
    truncated series is garbage. The relative term keeps the certificate
    meaningful there while still implying the chordal bound.
    """
    ch = chordal(a, b)
    if a.is_infinity or b.is_infinity:
        return ch
    x, y = a.to_complex(), b.to_complex()
    rel = abs(x - y) / (1.0 + max(abs(x), abs(y)))
    return max(ch, rel)


def koenigs_series(f: RationalMap, p, trunc: int = TRUNC_DEFAULT) -> Linearizer:
    """Linearizing series of f at the repelling fixed point p.

    p = infinity is handled by conjugating with z -> 1/z; the returned
    coefficients then live in the reciprocal chart and evaluation undoes
    the conjugation.
    """
    if not (2 <= trunc <= TRUNC_MAX):
        raise PreconditionError(f"trunc must lie in [2, {TRUNC_MAX}]")
    base = sphere_point(p)
    if base.is_infinity:
        work, p_work, conj = _invert_map(f), 0.0 + 0.0j, True
    else:
        work, p_work, conj = f, base.to_complex(), False

    res = chordal(work(p_work), p_work)
    if res > FIXED_POINT_TOL:
        raise PreconditionError(f"not a fixed point (chordal residual {res:.2e})")
    lam = _standard_multiplier(work, p_work)
    if abs(lam) <= 1.0:
        raise PreconditionError(f"fixed point not repelling (|lambda| = {abs(lam):.6g})")

    # Taylor expansion of the working map at p, then the triangular solve.
    a = work.num.shifted(p_work).c[: trunc + 1]
    b = work.den.shifted(p_work).c[: trunc + 1]
    taylor = ps_mul(a, ps_recip(b, trunc), trunc)

    w = np.zeros(trunc + 1, dtype=complex)
    w[1] = 1.0
    lam_pow = lam
    for n in range(2, trunc + 1):
        lam_pow = lam_pow * lam
        comp = ps_polyval(taylor[: n + 1], w[: n + 1], n)
        denom = lam_pow - lam
        w[n] = comp[n] / denom if np.isfinite(denom) and denom != 0 else 0.0

    coeffs = w.copy()
    coeffs[0] = p_work
    L = Linearizer(
        base=base,
        lam=lam,
        coeffs=coeffs,
        trust_radius=0.0,
        residual_at_trust=0.0,
        conjugated=conj,
    )
    rho, res_at = _trust_sweep(L, work)
    return Linearizer(base, lam, coeffs, rho, res_at, conj)


def _raw_residual(L: Linearizer, work: RationalMap, radius: float, n_samples: int) -> float:
    """Functional-equation residual of the truncated series at |zeta| = radius.

    Both sides are straight series evaluations (no extension); that is what
    makes this a truncation certificate.
    """
    if radius == 0.0:
        return 0.0
    ang = 2.0 * np.pi * (np.arange(n_samples) + 0.5) / n_samples
    zs = radius * np.exp(1j * ang)
    lhs_vals = npp.polyval(zs, L.coeffs)
    rhs_vals = npp.polyval(zs * L.lam, L.coeffs)
    worst = 0.0
    for lv, rv in zip(lhs_vals, rhs_vals):
        if not (np.isfinite(lv) and np.isfinite(rv)):
            return math.inf
        try:
            img = work(_work_chart_point(lv))
        except PreconditionError:
            return math.inf
        worst = max(worst, _side_residual(img, _work_chart_point(rv)))
        if worst == math.inf:
            return worst
    return worst


def _work_chart_point(value: complex) -> SpherePoint:
    if abs(value) <= 2.0:
        return SpherePoint(STANDARD, value)
    return SpherePoint(RECIPROCAL, 1.0 / value)


def _trust_sweep(L: Linearizer, work: RationalMap):
    """Largest dyadic radius with residual below RESIDUAL_TOL."""
    k = 0
    if _raw_residual(L, work, 1.0, BOUNDARY_SAMPLES) < RESIDUAL_TOL:
        while k < 40:
            if _raw_residual(L, work, 2.0 ** (k + 1), BOUNDARY_SAMPLES) >= RESIDUAL_TOL:
                break
            k += 1
    else:
        k = None
        for kk in range(-1, -61, -1):
            if _raw_residual(L, work, 2.0 ** kk, BOUNDARY_SAMPLES) < RESIDUAL_TOL:
                k = kk
                break
        if k is None:
            raise PreconditionError("no dyadic radius certifies the series")
    rho = 2.0 ** k
    return rho, _raw_residual(L, work, rho, BOUNDARY_SAMPLES)


def linearizer_residual(
    L: Linearizer, f: RationalMap, radius: float, n_samples: int = BOUNDARY_SAMPLES
) -> float:
    """Residual of the truncated series at the given radius (0 maps to 0)."""
    if radius < 0:
        raise PreconditionError("radius must be nonnegative")
    work = _invert_map(f) if L.conjugated else f
    return _raw_residual(L, work, radius, n_samples)


def eval_linearizer(L: Linearizer, f: RationalMap, zeta: complex) -> SpherePoint:
    """psi(zeta), extended beyond the trust radius by m pullbacks.

    m = ceil(log_{|lambda|}(|zeta| / rho0)); the series is evaluated at
    lambda^-m * zeta and pushed forward with f^m.
    """
    zeta = complex(zeta)
    rho = L.trust_radius
    m = 0
    if abs(zeta) > rho:
        m = max(0, math.ceil(math.log(abs(zeta) / rho) / math.log(abs(L.lam))))
    u = zeta * L.lam ** (-m) if m else zeta
    pt = _series_point(L, complex(npp.polyval(u, L.coeffs)))
    work = f
    for _ in range(m):
        pt = work(pt)
    return pt


def generalized_koenigs(
    f: RationalMap,
    p,
    ell: int,
    beta: complex,
    trunc: int = TRUNC_DEFAULT,
    root_index: int = 0,
) -> GeneralizedLinearizer:
    """chi(zeta) = psi(beta zeta^ell) with f(chi(zeta)) = chi(kappa zeta).

    kappa is the root_index-th ell-th root of lambda; the choice is recorded
    so runs are reproducible.
    """
    if ell < 1 or int(ell) != ell:
        raise PreconditionError("ell must be a positive integer")
    beta = complex(beta)
    if beta == 0:
        raise PreconditionError("beta must be nonzero")
    inner = koenigs_series(f, p, trunc)
    lam = inner.lam
    kappa = np.exp((np.log(complex(lam)) + 2j * np.pi * (root_index % ell)) / ell)
    if abs(kappa**ell - lam) > 1e-12 * max(1.0, abs(lam)):
        raise PreconditionError("root selection failed to satisfy kappa^ell = lambda")
    return GeneralizedLinearizer(inner, int(ell), beta, complex(kappa), int(root_index))


def eval_generalized(G: GeneralizedLinearizer, f: RationalMap, zeta: complex) -> SpherePoint:
    return eval_linearizer(G.inner, f, G.beta * complex(zeta) ** G.ell)
