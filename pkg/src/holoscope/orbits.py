"""Periodic points and cycle data.

Period-n points are the roots of N(z) = numerator of f^n(z) - z. N is never
expanded in coefficients (iterate coefficients overflow doubles long before
the documented degree cap); instead the Aberth-Ehrlich corrections use the
logarithmic derivative N'/N obtained from a projectively renormalized
forward iteration that carries value and derivative pairs. The census
compares what survived verification against degree^n + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonConvergenceError, PreconditionError
from .maps import RationalMap
from .sphere import INF, SpherePoint, chordal, sphere_point

MAX_ITER = 500
STEP_TOL = 1e-13
VERIFY_TOL = 1e-8
DEDUP_RADIUS = 1e-7
EPS_CLS = 1e-6
SUPER_TOL = 1e-12
DEGREE_CAP = 10**6


@dataclass(frozen=True)
class Cycle:
    period: int
    points: tuple
    multiplier: complex
    kind: str
    multiplicity: int = 1
    residual: float = 0.0


@dataclass
class Census:
    period: int
    expected_total: int
    finite_expected: int
    infinity_multiplicity: int
    found_with_multiplicity: int
    deficit: int
    parabolic_clusters: int = 0
    notes: list = field(default_factory=list)


def _padded(c: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=complex)
    out[: len(c)] = c
    return out


def _newton_ratio(f: RationalMap, n: int, z: np.ndarray) -> np.ndarray:
    """N(z)/N'(z) for N = num(f^n(z) - z), via scaled projective iteration.

    The pair (u, v) tracks f^k(z) homogeneously, (du, dv) its z-derivative;
    rescaling all four by a common per-point constant leaves N/N' exact.
    """
    d = f.degree
    p = _padded(f.num.c, d + 1)
    q = _padded(f.den.c, d + 1)
    u = z.astype(complex).copy()
    v = np.ones_like(u)
    du = np.ones_like(u)
    dv = np.zeros_like(u)
    for _ in range(n):
        upow = np.ones((d + 1, len(z)), dtype=complex)
        vpow = np.ones((d + 1, len(z)), dtype=complex)
        for k in range(1, d + 1):
            upow[k] = upow[k - 1] * u
            vpow[k] = vpow[k - 1] * v
        U = np.zeros_like(u)
        V = np.zeros_like(u)
        dU = np.zeros_like(u)
        dV = np.zeros_like(u)
        for k in range(d + 1):
            mono = upow[k] * vpow[d - k]
            U += p[k] * mono
            V += q[k] * mono
            dmono = np.zeros_like(u)
            if k > 0:
                dmono += k * upow[k - 1] * vpow[d - k] * du
            if d - k > 0:
                dmono += (d - k) * upow[k] * vpow[d - k - 1] * dv
            dU += p[k] * dmono
            dV += q[k] * dmono
        scale = np.maximum(np.abs(U), np.abs(V))
        scale[scale == 0] = 1.0
        u, v, du, dv = U / scale, V / scale, dU / scale, dV / scale
    N = u - z * v
    dN = du - v - z * dv
    with np.errstate(divide="ignore", invalid="ignore"):
        r = N / dN
    r[~np.isfinite(r)] = 0.0
    return r


def _infinity_multiplicity(f: RationalMap, n: int):
    """(is_fixed, multiplicity, multiplier) of infinity under f^n."""
    orbit = [INF]
    for _ in range(n):
        orbit.append(f(orbit[-1]))
    if not orbit[-1].is_infinity:
        return False, 0, None
    lam = complex(1.0)
    for pt in orbit[:-1]:
        lam *= f.derivative(pt)
    if abs(lam - 1.0) > 1e-8:
        return True, 1, lam
    # Parabolic at infinity: vanishing order of g^n(w) - w near w = 0.
    hs = []
    for w0 in (1e-4, 1e-5):
        pt = SpherePoint("reciprocal", w0)
        img = f.iterate(pt, n)
        wim = (1.0 / img.to_complex()) if img.chart == "standard" else img.value
        hs.append(abs(wim - w0))
    if hs[1] == 0 or hs[0] == 0:
        m = 2
    else:
        m = max(2, round(math.log10(hs[0] / hs[1])))
    return True, int(m), lam


def _escape_radius(f: RationalMap) -> float:
    c = f.num.c
    return max(2.0, (2.0 + float(np.sum(np.abs(c[:-1])))) / abs(c[-1]))


def _aberth(f: RationalMap, n: int, count: int) -> np.ndarray:
    if count == 0:
        return np.array([], dtype=complex)
    radius = _escape_radius(f) + 1.0 if f.is_polynomial else 3.0
    ang = 2.0 * np.pi * (np.arange(count) + 0.37) / count
    z = radius * np.exp(1j * ang)
    if count == 1:
        z = z + 0.1  # a lone point on a symmetric circle can sit on a ridge
    for _ in range(MAX_ITER):
        r = _newton_ratio(f, n, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - r * s
        denom[denom == 0] = 1.0
        alpha = r / denom
        bad = ~np.isfinite(alpha)
        alpha[bad] = 0.0
        z = z - alpha
        if np.max(np.abs(alpha)) < STEP_TOL * (1.0 + np.max(np.abs(z))):
            return z
    resid = np.abs(_newton_ratio(f, n, z))
    raise NonConvergenceError(
        f"root iteration did not converge in {MAX_ITER} steps "
        f"(max Newton ratio {np.max(resid):.2e})",
        residuals=resid,
    )


def _verify(f: RationalMap, n: int, roots: np.ndarray):
    kept, resid = [], []
    for z in roots:
        pt = sphere_point(z)
        r = chordal(f.iterate(pt, n), pt)
        if r < VERIFY_TOL:
            kept.append(z)
            resid.append(r)
    return np.array(kept, dtype=complex), resid


def _cluster(roots: np.ndarray):
    """Greedy chordal clustering at the dedup radius."""
    used = np.zeros(len(roots), dtype=bool)
    reps, mults = [], []
    for i in range(len(roots)):
        if used[i]:
            continue
        members = [roots[i]]
        used[i] = True
        for j in range(i + 1, len(roots)):
            if not used[j] and chordal(roots[i], roots[j]) < DEDUP_RADIUS:
                used[j] = True
                members.append(roots[j])
        reps.append(np.mean(members))
        mults.append(len(members))
    return reps, mults


def _primitive_period(f: RationalMap, pt: SpherePoint, n: int) -> int:
    for k in range(1, n + 1):
        if n % k == 0 and chordal(f.iterate(pt, k), pt) < VERIFY_TOL:
            return k
    return 0


def classify(multiplier: complex) -> str:
    m = abs(multiplier)
    if m < SUPER_TOL:
        return "superattracting"
    if m < 1.0 - EPS_CLS:
        return "attracting"
    if m > 1.0 + EPS_CLS:
        return "repelling"
    return "indifferent"


def cycle_multiplier(f: RationalMap, points) -> complex:
    """Product of chart-consistent derivatives along the cycle.

    Factors are multiplied in a canonical sorted order so the value is
    bit-identical no matter which point of the cycle is taken as base.
    """
    factors = [f.derivative(pt) for pt in points]
    factors.sort(key=lambda c: (c.real, c.imag))
    out = complex(1.0)
    for c in factors:
        out *= c
    return out


def multiplier(f: RationalMap, cycle: Cycle) -> complex:
    return cycle_multiplier(f, cycle.points)


def _solve(f: RationalMap, n: int):
    if n < 1:
        raise PreconditionError("period must be >= 1")
    if f.degree**n > DEGREE_CAP:
        raise PreconditionError(
            f"degree^n = {f.degree ** n} exceeds the cap {DEGREE_CAP}"
        )
    total = f.degree**n + 1
    inf_fixed, m_inf, _ = _infinity_multiplicity(f, n)
    finite_expected = total - m_inf
    census = Census(
        period=n,
        expected_total=total,
        finite_expected=finite_expected,
        infinity_multiplicity=m_inf,
        found_with_multiplicity=0,
        deficit=0,
    )

    roots = _aberth(f, n, finite_expected)
    verified, _ = _verify(f, n, roots)
    census.found_with_multiplicity = len(verified)
    census.deficit = finite_expected - len(verified)
    if census.deficit:
        census.notes.append(
            f"{census.deficit} of {finite_expected} finite roots failed verification"
        )

    reps, mults = _cluster(verified)
    census.parabolic_clusters = sum(1 for m in mults if m > 1)
    if census.parabolic_clusters:
        census.notes.append(
            f"{census.parabolic_clusters} root cluster(s) merged at radius {DEDUP_RADIUS:g}"
        )

    # Points on the cycle of infinity show up among the finite roots too;
    # pull them out so that cycle is reported once, through its own orbit.
    pool = []
    for rep, mult in zip(reps, mults):
        pt = sphere_point(rep)
        k = _primitive_period(f, pt, n)
        if k == n:
            pool.append((pt, mult))

    cycles = []
    if inf_fixed:
        k = _primitive_period(f, INF, n)
        if k == n:
            orbit = [INF]
            for _ in range(n - 1):
                orbit.append(f(orbit[-1]))
            pool = [
                (pt, mult)
                for pt, mult in pool
                if all(chordal(pt, o) >= DEDUP_RADIUS for o in orbit)
            ]
            lam = cycle_multiplier(f, orbit)
            cycles.append(
                Cycle(n, tuple(orbit), lam, classify(lam), multiplicity=m_inf)
            )

    remaining = list(pool)
    while remaining:
        base, mult = remaining.pop(0)
        orbit = [base]
        orbit_mult = mult
        ok = True
        cur = base
        for _ in range(n - 1):
            cur = f(cur)
            dists = [chordal(cur, cand) for cand, _ in remaining]
            if not dists or min(dists) > 1e-5:
                ok = False
                break
            j = int(np.argmin(dists))
            nxt, nxt_mult = remaining.pop(j)
            orbit.append(nxt)
            orbit_mult = max(orbit_mult, nxt_mult)
        if not ok:
            census.notes.append(f"orbit through {base!r} did not close on found roots")
            continue
        res = max(chordal(f.iterate(pt, n), pt) for pt in orbit)
        lam = cycle_multiplier(f, orbit)
        cycles.append(
            Cycle(n, tuple(orbit), lam, classify(lam), orbit_mult, res)
        )

    cycles.sort(key=lambda c: (-abs(c.multiplier), c.points[0].value.real))
    return cycles, census


def periodic_points(f: RationalMap, n: int):
    """All primitive-period-n cycles of f (infinity included when periodic)."""
    return _solve(f, n)[0]


def periodic_point_census(f: RationalMap, n: int) -> Census:
    """Root census for period n: found vs expected degree^n + 1."""
    return _solve(f, n)[1]
