"""Backward-shrinking and ball-scaling diagnostics near the Julia set.

Both estimators probe expansion without certifying it. Backward branches
of a small disk shrink like lambda^{-n} when the map expands along the
sampled trees; the maximal-entropy measure of balls scales like r^theta.
The two are reported independently; neither claims the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import PreconditionError
from .maps import RationalMap
from .measures import EmpiricalMeasure, _preimage_step, green_function
from .sphere import chordal, sphere_point

KOEBE = 4.0
RADIUS_CAP = 0.2
ON_J_GREEN = 1e-6
COUNT_FLOOR = 50
BALL_MIN_LARGEST = 100
MIN_MEASURE = 100_000


@dataclass
class ShrinkEstimate:
    center: complex
    radius: float
    diam_by_n: list
    branch_count_by_n: list
    fitted_rate: float
    truncated_at: int | None = None


@dataclass
class BallScalingReport:
    theta_hat: float
    per_point: list
    radii: list
    flagged: list = field(default_factory=list)


def _planar_deriv_abs(f: RationalMap, w: np.ndarray) -> np.ndarray:
    n = npp.polyval(w, f.num.c)
    q = npp.polyval(w, f.den.c)
    dn = npp.polyval(w, f.num.deriv().c)
    dq = npp.polyval(w, f.den.deriv().c)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.abs((dn * q - n * dq) / (q * q))


def _check_on_julia(f: RationalMap, x: complex):
    if f.is_polynomial:
        g = green_function(f, x)
        if g.value >= ON_J_GREEN:
            raise PreconditionError(
                f"point has Green value {g.value:.3e} >= {ON_J_GREEN}, not on the Julia set"
            )
        return
    # rational fallback: 200 forward steps must not settle onto a cycle
    orbit = [sphere_point(x)]
    for _ in range(200):
        orbit.append(f(orbit[-1]))
    tail = orbit[-30:]
    for p in range(1, 6):
        if all(chordal(tail[i], tail[i + p]) < 1e-8 for i in range(len(tail) - p)):
            raise PreconditionError(
                f"orbit converged to an attracting cycle of period {p}; point not on the Julia set"
            )


def shrink_rate_estimate(
    f: RationalMap,
    x,
    r: float,
    n_max: int = 12,
    branch_budget: int = 64,
    seed: int = 0,
) -> ShrinkEstimate:
    """Backward contraction rate of a disk B(x, r) along random branches.

    Each branch pulls the center back one preimage at a time; its component
    diameter is approximated by r K / |(f^n)'| with Koebe allowance K = 4,
    kept only while the inflated disk stays clear of the critical points
    (univalent pullback). diam_by_n takes the max over surviving branches,
    so the fitted rate is a lower bound on the true expansion.
    """
    if r <= 0 or r > RADIUS_CAP:
        raise PreconditionError(f"radius must be in (0, {RADIUS_CAP}]")
    if n_max < 2 or branch_budget < 1:
        raise PreconditionError("need n_max >= 2 and a positive branch budget")
    center = sphere_point(x)
    if center.is_infinity:
        raise PreconditionError("center the disk at a finite point")
    x0 = center.to_complex()
    _check_on_julia(f, x0)
    crit = np.asarray(f.critical_points(), dtype=complex)
    crit = crit[np.isfinite(crit)]
    rng = np.random.Generator(np.random.Philox(seed))
    choices = rng.integers(0, f.degree, size=(n_max, branch_budget))
    w = np.full(branch_budget, x0, dtype=complex)
    logderiv = np.zeros(branch_budget)
    alive = np.ones(branch_budget, dtype=bool)
    diam_by_n = []
    count_by_n = []
    truncated_at = None
    for n in range(1, n_max + 1):
        idx = np.flatnonzero(alive)
        if len(idx) == 0:
            truncated_at = n - 1
            break
        w[idx] = _preimage_step(f, w[idx], choices[n - 1, idx])
        with np.errstate(divide="ignore"):
            # a branch on a critical point gets diam inf and is culled below
            logderiv[idx] += np.log(_planar_deriv_abs(f, w[idx]))
        diam = r * KOEBE * np.exp(-logderiv[idx])
        if len(crit):
            clearance = np.min(np.abs(w[idx][:, None] - crit[None, :]), axis=1)
            ok = 2.0 * diam < clearance
        else:
            ok = np.ones(len(idx), dtype=bool)
        alive[idx[~ok]] = False
        if not ok.any():
            truncated_at = n - 1
            break
        diam_by_n.append(float(diam[ok].max()))
        count_by_n.append(int(ok.sum()))
    if len(diam_by_n) < 2:
        raise PreconditionError(
            "every branch hit the critical orbit immediately; no rate at this scale"
        )
    k = math.ceil(len(diam_by_n) / 2)
    ns = np.arange(len(diam_by_n) - k + 1, len(diam_by_n) + 1, dtype=float)
    ys = -np.log(diam_by_n[-k:])
    slope = float(np.polyfit(ns, ys, 1)[0]) if k >= 2 else float("nan")
    return ShrinkEstimate(
        center=x0,
        radius=float(r),
        diam_by_n=diam_by_n,
        branch_count_by_n=count_by_n,
        fitted_rate=math.exp(slope) if np.isfinite(slope) else float("nan"),
        truncated_at=truncated_at,
    )


def measure_ball_scaling(mu: EmpiricalMeasure, points, radii) -> BallScalingReport:
    """Fitted exponents of log mu(B(x, r)) against log r, per query point.

    Radii must span two decades; radii whose ball holds 50 samples or
    fewer are dropped, and a point with under two usable radii (or under
    100 samples at the largest radius) is flagged instead of fitted.
    theta_hat is the max fitted exponent, the binding theta in the
    lower-bound reading mu(B) >= c r^theta.
    """
    if len(mu) < MIN_MEASURE:
        raise PreconditionError(f"measure needs >= {MIN_MEASURE} samples")
    radii = np.sort(np.asarray(radii, dtype=float))
    if len(radii) < 3 or radii[0] <= 0:
        raise PreconditionError("need at least 3 positive radii")
    if radii[-1] / radii[0] < 99.9:
        raise PreconditionError("radii must span at least two decades")
    per_point = []
    flagged = []
    slopes = []
    for raw in points:
        pt = sphere_point(raw)
        if pt.is_infinity:
            flagged.append(raw)
            per_point.append((raw, None))
            continue
        x = pt.to_complex()
        dist = np.abs(mu.points - x)
        order = np.argsort(dist)
        cum = np.cumsum(mu.weights[order])
        sorted_dist = dist[order]
        counts = np.searchsorted(sorted_dist, radii, side="right")
        mass = np.where(counts > 0, cum[np.maximum(counts - 1, 0)], 0.0)
        usable = counts > COUNT_FLOOR
        if counts[-1] < BALL_MIN_LARGEST or usable.sum() < 2:
            flagged.append(raw)
            per_point.append((raw, None))
            continue
        slope = float(
            np.polyfit(np.log(radii[usable]), np.log(mass[usable]), 1)[0]
        )
        slopes.append(slope)
        per_point.append((raw, slope))
    if not slopes:
        raise PreconditionError("no query point had usable ball statistics")
    return BallScalingReport(
        theta_hat=float(max(slopes)),
        per_point=per_point,
        radii=[float(r) for r in radii],
        flagged=flagged,
    )
