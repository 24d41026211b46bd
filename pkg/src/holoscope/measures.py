"""Maximal-entropy and harmonic measures for polynomial dynamics.

Two samplers target the same measure from opposite directions. Inverse
iteration pulls a start point backward through uniformly chosen preimage
branches; walk-on-spheres runs Brownian paths from outside until they stick
to the Julia set at resolution eps_stop, using the Green-function distance
estimate sinh(G) / (2 e^G |grad G|) for the jump radii. For polynomials the
two must agree: the maximal-entropy measure is the harmonic measure of the
basin of infinity.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import InternalError, PreconditionError
from .maps import RationalMap
from .sphere import SpherePoint, sphere_point

WEIGHT_TOL = 1e-12
BURN_IN = 20
WALK_STEP_CAP = 100_000
WALK_ALPHA = 0.9
DISCARD_LIMIT = 0.01
SHOT_NOISE = 10.0
GRAD_STEP = 1e-6


def map_hash(f: RationalMap) -> str:
    h = hashlib.sha256()
    h.update(np.round(f.num.c, 14).tobytes())
    h.update(b"/")
    h.update(np.round(f.den.c, 14).tobytes())
    return h.hexdigest()[:16]


@dataclass
class EmpiricalMeasure:
    points: np.ndarray
    weights: np.ndarray
    seed: int | None
    provenance: str
    map_hash: str | None = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)
        self.weights = np.asarray(self.weights, dtype=float)
        if len(self.points) != len(self.weights) or len(self.points) == 0:
            raise PreconditionError("points and weights must be equal-length, non-empty")
        if not np.all(np.isfinite(self.points)):
            raise PreconditionError("measure points must be finite")
        if np.any(self.weights < 0):
            raise PreconditionError("weights must be nonnegative")
        total = float(self.weights.sum())
        if total <= 0:
            raise PreconditionError("weights must have positive mass")
        self.weights = self.weights / total
        if abs(float(self.weights.sum()) - 1.0) > WEIGHT_TOL:
            raise InternalError("weight normalization failed")

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class GreenEvaluation:
    value: float
    escape_time: int | None
    converged: bool


@dataclass
class ComparisonReport:
    tv: float
    ratio_low: float
    ratio_high: float
    occupied_bins: int
    bins: int
    window: tuple
    n_a: int
    n_b: int
    notes: list = field(default_factory=list)


def _require_polynomial(f: RationalMap, what: str):
    if not f.is_polynomial:
        raise PreconditionError(f"{what} needs a polynomial map")


def escape_radius(f: RationalMap) -> float:
    """Radius beyond which |f| at least doubles the modulus (polynomials)."""
    _require_polynomial(f, "escape radius")
    c = f.num.c
    return max(2.0, (2.0 + float(np.sum(np.abs(c[:-1])))) / abs(c[-1]))


def _green_values(f: RationalMap, w: np.ndarray, n_max: int, r_esc: float):
    """Green function of the basin of infinity on an array of points.

    Returns (values, escape_times) with escape_time -1 where the orbit
    stayed bounded through n_max (value 0 there).
    """
    c = f.num.c
    d = f.degree
    lead = abs(c[-1])
    z = w.astype(complex).copy()
    esc = np.full(len(w), -1, dtype=np.int64)
    alive = np.flatnonzero(np.abs(z) <= r_esc)
    for k in range(1, n_max + 1):
        if len(alive) == 0:
            break
        z[alive] = npp.polyval(z[alive], c)
        out = np.abs(z[alive]) > r_esc
        esc[alive[out]] = k
        alive = alive[~out]
    esc[np.abs(w) > r_esc] = 0
    g = np.zeros(len(w), dtype=float)
    escaped = esc >= 0
    if escaped.any():
        ze = z[escaped].copy()
        val = np.log(np.abs(ze))
        factor = np.full(len(ze), 1.0 / d)
        live = np.flatnonzero(factor > 0)
        big_cut = 10.0 ** min(100.0, 250.0 / d)  # keep |z|^d representable
        tail = (d / (d - 1.0)) * math.log(lead)
        for _ in range(80):
            if len(live) == 0:
                break
            big = np.abs(ze[live]) > big_cut
            if big.any():
                idx = live[big]
                # closed-form tail: increments are log|lead| from here on
                val[idx] += factor[idx] * tail
                live = live[~big]
                if len(live) == 0:
                    break
            zl = ze[live]
            zn = npp.polyval(zl, c)
            val[live] += factor[live] * (np.log(np.abs(zn)) - d * np.log(np.abs(zl)))
            ze[live] = zn
            factor[live] /= d
            live = live[factor[live] > 1e-18]
        g[escaped] = val * (float(d) ** (-esc[escaped].astype(float)))
    return g, esc


def green_function(f: RationalMap, z, n_max: int = 200, r_esc: float | None = None) -> GreenEvaluation:
    """Escape-rate Green function G(z) of the basin of infinity.

    Satisfies G(f(z)) = degree * G(z); zero on the filled Julia set. The
    value refines the first-escape estimate with the multiplicative tail
    until machine precision, so it does not depend on r_esc.
    """
    _require_polynomial(f, "green_function")
    pt = sphere_point(z)
    if pt.is_infinity:
        raise PreconditionError("green_function expects a finite point")
    r = escape_radius(f) if r_esc is None else float(r_esc)
    vals, esc = _green_values(f, np.array([pt.to_complex()]), n_max, r)
    escaped = int(esc[0]) >= 0
    return GreenEvaluation(
        value=float(vals[0]),
        escape_time=int(esc[0]) if escaped else None,
        converged=escaped,
    )


def _distance_estimate(f, w, n_max, r_esc):
    """Lower bound for dist(w, J): sinh(G) / (2 e^G |grad G|).

    Written as (1 - e^{-2G}) / (4 |grad G|), which survives G of hundreds.
    Central differences for the gradient ride in the same stacked call.
    """
    n = len(w)
    h = GRAD_STEP * (1.0 + np.abs(w))
    stacked = np.concatenate([w, w + h, w - h, w + 1j * h, w - 1j * h])
    g, _ = _green_values(f, stacked, n_max, r_esc)
    if np.any(g[:n] <= 0.0):
        raise InternalError("walk touched a point with G <= 0")
    gx = (g[n : 2 * n] - g[2 * n : 3 * n]) / (2.0 * h)
    gy = (g[3 * n : 4 * n] - g[4 * n :]) / (2.0 * h)
    grad = np.hypot(gx, gy)
    with np.errstate(divide="ignore"):
        return -np.expm1(-2.0 * g[:n]) / (4.0 * grad), g[:n]


def exceptional_points(f: RationalMap):
    """Totally invariant points (fiber equals the point itself)."""
    out = []
    d = f.degree
    p = np.zeros(d + 2, dtype=complex)
    p[: len(f.num.c)] = f.num.c
    q = np.zeros(d + 2, dtype=complex)
    q[1 : len(f.den.c) + 1] = f.den.c
    fixed = np.roots(np.trim_zeros((p - q)[::-1], "f"))
    for z in fixed:
        fiber = _fiber_roots(f, complex(z))
        if len(fiber) == d and np.all(np.abs(fiber - z) < 1e-9):
            out.append(sphere_point(complex(z)))
    if f(sphere_point(None)).is_infinity and f.den.degree == 0:
        out.append(sphere_point(None))  # polynomial: fiber of infinity is itself
    return out


def _fiber_roots(f: RationalMap, target: complex) -> np.ndarray:
    c = np.zeros(f.degree + 1, dtype=complex)
    c[: len(f.num.c)] += f.num.c
    c[: len(f.den.c)] -= target * f.den.c
    if abs(c[-1]) < 1e-12 * max(1.0, np.max(np.abs(c))):
        return np.array([])  # a preimage escaped to infinity
    return np.roots(c[::-1])


def _preimage_step(f: RationalMap, z: np.ndarray, choice: np.ndarray) -> np.ndarray:
    """One uniform backward step: slot `choice[i]` of the fiber over z[i]."""
    d = f.degree
    p = np.zeros(d + 1, dtype=complex)
    p[: len(f.num.c)] = f.num.c
    q = np.zeros(d + 1, dtype=complex)
    q[: len(f.den.c)] = f.den.c
    coeffs = p[None, :] - z[:, None] * q[None, :]
    lead = coeffs[:, -1]
    scale = np.max(np.abs(coeffs), axis=1)
    if np.any(np.abs(lead) < 1e-12 * scale):
        raise PreconditionError(
            "a backward step produced a preimage at infinity; pick another start point"
        )
    if d == 2:
        a, b, c0 = coeffs[:, 2], coeffs[:, 1], coeffs[:, 0]
        s = np.sqrt(b * b - 4.0 * a * c0)
        s = np.where(np.abs(b + s) >= np.abs(b - s), s, -s)
        qq = -0.5 * (b + s)
        r0 = qq / a
        with np.errstate(divide="ignore", invalid="ignore"):
            r1 = np.where(qq != 0, c0 / qq, r0)
        return np.where(choice == 0, r0, r1)
    comp = np.zeros((len(z), d, d), dtype=complex)
    comp[:, 1:, :-1] = np.eye(d - 1)
    comp[:, :, -1] = -coeffs[:, :-1] / lead[:, None]
    roots = np.linalg.eigvals(comp)
    return roots[np.arange(len(z)), choice]


def sample_mmem(
    f: RationalMap, n_points: int, depth: int = 24, z0=2.0, seed: int = 0
) -> EmpiricalMeasure:
    """Sample the maximal-entropy measure by uniform inverse iteration.

    Each of the n_points chains starts at z0 and takes `depth` backward
    steps choosing one of the degree preimage slots uniformly (multiplicity
    handled by the slot count); only the endpoint is kept, and depth must
    cover the burn-in of 20.
    """
    if n_points < 1:
        raise PreconditionError("need at least one sample")
    if depth < BURN_IN:
        raise PreconditionError(f"depth must be >= {BURN_IN} (burn-in)")
    start = sphere_point(z0)
    exc = exceptional_points(f)
    if any(
        (start.is_infinity and e.is_infinity)
        or (not start.is_infinity and not e.is_infinity
            and abs(start.to_complex() - e.to_complex()) < 1e-9)
        for e in exc
    ):
        names = ", ".join(repr(e) for e in exc)
        raise PreconditionError(
            f"z0 is exceptional (totally invariant); exceptional set: {{{names}}}"
        )
    if start.is_infinity:
        raise PreconditionError("start the chains at a finite point")
    rng = np.random.Generator(np.random.Philox(seed))
    z = np.full(n_points, start.to_complex(), dtype=complex)
    choices = rng.integers(0, f.degree, size=(depth, n_points))
    for t in range(depth):
        z = _preimage_step(f, z, choices[t])
    if not np.all(np.isfinite(z)):
        raise PreconditionError("backward chains left the finite plane")
    return EmpiricalMeasure(
        points=z,
        weights=np.full(n_points, 1.0 / n_points),
        seed=seed,
        provenance="inverse-iteration",
        map_hash=map_hash(f),
    )


def _walk_jump_radii(f, pos, recip, n_max, r_esc):
    """Certified distance lower bounds at walk positions, chart by chart.

    pos holds the standard value where recip is False, the reciprocal 1/w
    where it is True. Planar positions use the Green estimate plus the
    geometric slack |w| - r_esc. Reciprocal positions transport the planar
    estimate through the inversion (a planar disk of radius D around w maps
    over a centered disk of radius D / (|w| (|w| + D))) and add the slack
    1/r_esc - |u|, which holds because J never leaves the escape radius.
    Both bounds need only the planar estimator, so the log pole of the
    inverted Green function is never differenced.
    """
    dhat = np.empty(len(pos), dtype=float)
    std = ~recip
    if std.any():
        w = pos[std]
        est, _ = _distance_estimate(f, w, n_max, r_esc)
        dhat[std] = np.maximum(est, np.abs(w) - r_esc)
    if recip.any():
        u = pos[recip]
        au = np.abs(u)
        out = 1.0 / r_esc - au
        # the transported estimate is < |u| always, so deep in the chart
        # (|u| <= 1/(2 r_esc)) the slack wins and the Green call is moot;
        # G > 0 is automatic there since |w| > r_esc escapes at once
        shell = au > 0.5 / r_esc
        if shell.any():
            w = 1.0 / u[shell]
            aw = np.abs(w)
            est, _ = _distance_estimate(f, w, n_max, r_esc)
            carried = est / (aw * (aw + est))
            out[shell] = np.maximum(carried, out[shell])
        dhat[recip] = out
    return dhat


def brownian_exit_measure(
    f: RationalMap,
    z_start,
    n_walks: int,
    eps_stop: float = 1e-3,
    seed: int = 0,
    n_max: int = 200,
) -> EmpiricalMeasure:
    """Harmonic measure of the basin boundary, by walk-on-spheres.

    Jumps are uniform on circles of radius 0.9 times a certified distance
    lower bound; a walk stops when the bound drops below eps_stop. The walk
    runs on the sphere: beyond modulus 2 it moves in the reciprocal chart,
    where jumps clear the neighborhood of infinity in O(1) steps (a purely
    planar walk started far out is log-scale recurrent and would stall).
    Exit positions are conformally invariant, so the sampled measure is the
    planar one. Walks exceeding the step cap are discarded; more than 1%
    discarded is an error. G > 0 is asserted at every visited point.
    """
    _require_polynomial(f, "brownian_exit_measure")
    if n_walks < 1:
        raise PreconditionError("need at least one walk")
    if eps_stop <= 0:
        raise PreconditionError("eps_stop must be positive")
    start = sphere_point(z_start)
    if start.is_infinity:
        raise PreconditionError("start walks at a finite proxy point, not infinity")
    r = escape_radius(f)
    g0 = green_function(f, start, n_max, r)
    if g0.value <= 0:
        raise PreconditionError("walk start must lie outside the filled Julia set")

    rng = np.random.Generator(np.random.Philox(seed))
    w0 = start.to_complex()
    use_recip = abs(w0) > 2.0
    pos = np.full(n_walks, 1.0 / w0 if use_recip else w0, dtype=complex)
    recip = np.full(n_walks, use_recip)
    alive = np.arange(n_walks)
    discard = np.zeros(n_walks, dtype=bool)
    steps = 0
    while len(alive) and steps < WALK_STEP_CAP:
        dhat = _walk_jump_radii(f, pos[alive], recip[alive], n_max, r)
        stop = dhat < eps_stop
        alive = alive[~stop]
        dhat = dhat[~stop]
        if len(alive) == 0:
            break
        theta = rng.random(len(alive)) * (2.0 * np.pi)
        moved = pos[alive] + WALK_ALPHA * dhat * np.exp(1j * theta)
        # rebalance charts after the jump: flip once a chart value outgrows
        # its comfort bound (2 in the plane, 1/2 in the reciprocal chart)
        was_recip = recip[alive]
        flip = np.abs(moved) > np.where(was_recip, 0.5, 2.0)
        moved[flip] = 1.0 / moved[flip]
        pos[alive] = moved
        recip[alive] = was_recip ^ flip
        steps += 1
    if len(alive):
        discard[alive] = True
    n_disc = int(discard.sum())
    if n_disc > DISCARD_LIMIT * n_walks:
        raise PreconditionError(
            f"{n_disc} of {n_walks} walks exceeded the step cap {WALK_STEP_CAP}"
        )
    keep = ~discard
    pts = np.where(recip[keep], 1.0 / pos[keep], pos[keep])
    return EmpiricalMeasure(
        points=pts,
        weights=np.full(len(pts), 1.0 / len(pts)),
        seed=seed,
        provenance="brownian-exit",
        map_hash=map_hash(f),
    )


def pushforward_measure(sigma, mu: EmpiricalMeasure) -> EmpiricalMeasure:
    """Apply a map to every sample; weights ride along.

    Samples whose image is not finite are dropped with a count; more than
    1% dropped is an error.
    """
    pts = mu.points
    if isinstance(sigma, RationalMap):
        n = npp.polyval(pts, sigma.num.c)
        q = npp.polyval(pts, sigma.den.c)
        with np.errstate(divide="ignore", invalid="ignore"):
            img = n / q
    else:
        evalr = sigma if callable(sigma) else None
        if evalr is None:
            raise PreconditionError("sigma must be a RationalMap or a callable")
        img = np.array([_as_finite(evalr(z)) for z in pts], dtype=complex)
    ok = np.isfinite(img.real) & np.isfinite(img.imag)
    dropped = int((~ok).sum())
    if dropped > DISCARD_LIMIT * len(pts):
        raise PreconditionError(
            f"{dropped} of {len(pts)} samples left sigma's domain"
        )
    return EmpiricalMeasure(
        points=img[ok],
        weights=mu.weights[ok],
        seed=mu.seed,
        provenance="pushforward",
        map_hash=mu.map_hash,
    )


def _as_finite(v) -> complex:
    if isinstance(v, SpherePoint):
        return v.to_complex() if not v.is_infinity else complex(np.inf, 0.0)
    return complex(v)


def measure_compare(
    mu_a: EmpiricalMeasure, mu_b: EmpiricalMeasure, window, bins: int = 64
) -> ComparisonReport:
    """Binned total variation and density ratios on a rectangular window.

    window = (xmin, xmax, ymin, ymax). Both measures are restricted to the
    window and renormalized; ratio bounds are taken only over bins where
    both renormalized masses clear the shot-noise floor 10 / n_samples.
    """
    xmin, xmax, ymin, ymax = map(float, window)
    if not (xmax > xmin and ymax > ymin):
        raise PreconditionError("window must be a nondegenerate rectangle")
    edges_x = np.linspace(xmin, xmax, bins + 1)
    edges_y = np.linspace(ymin, ymax, bins + 1)

    def hist(mu):
        h, _, _ = np.histogram2d(
            mu.points.real, mu.points.imag, bins=[edges_x, edges_y], weights=mu.weights
        )
        total = h.sum()
        if total <= 0:
            raise PreconditionError("a measure has no mass in the window")
        return h / total

    ha, hb = hist(mu_a), hist(mu_b)
    tv = 0.5 * float(np.abs(ha - hb).sum())
    floor_a = SHOT_NOISE / len(mu_a)
    floor_b = SHOT_NOISE / len(mu_b)
    mask = (ha > floor_a) & (hb > floor_b)
    report = ComparisonReport(
        tv=tv,
        ratio_low=math.nan,
        ratio_high=math.nan,
        occupied_bins=int(mask.sum()),
        bins=bins,
        window=(xmin, xmax, ymin, ymax),
        n_a=len(mu_a),
        n_b=len(mu_b),
    )
    if mask.any():
        ratios = ha[mask] / hb[mask]
        report.ratio_low = float(ratios.min())
        report.ratio_high = float(ratios.max())
    else:
        report.notes.append("no bin cleared the shot-noise floor for both measures")
    return report
