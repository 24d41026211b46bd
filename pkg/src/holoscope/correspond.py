"""Algebraic-correspondence certificates for pairs of rational maps.

Given repelling fixed points of two maps, a multiplier relation
lambda1^(a ell) = lambda2^b is the arithmetic shadow of a semiconjugacy
f2^b after sigma = sigma after f1^a. These routines search for such
relations, check the accompanying degree identity d1^a = d2^b exactly,
measure semiconjugacy residuals on samples, and fit algebraic curves
through graphs of linearizer pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError
from .linearize import GeneralizedLinearizer, Linearizer, eval_generalized, eval_linearizer
from .maps import RationalMap
from .sphere import SpherePoint, chordal, sphere_point

DEFECT_TOL = 1e-9
FIT_TOL = 1e-8
RANK_COLLAPSE = 1e-12
CHART_CAP = 1e8


@dataclass(frozen=True)
class MultiplierRelation:
    a: int
    b: int
    ell: int
    defect: float
    primitive: bool = False


@dataclass
class CurveCandidate:
    bidegree: tuple
    coeffs: np.ndarray
    fit_residual: float
    invariance_residual: float | None = None
    reducible: str = "unknown"
    dropped: int = 0


def _log_defect(lam1: complex, ell: int, lam2: complex, a: int, b: int, k_bound: int) -> float:
    """|a ell Log(lam1) - b Log(lam2)| minimized over the 2 pi i branch lattice."""
    re = a * ell * math.log(abs(lam1)) - b * math.log(abs(lam2))
    im = a * ell * math.atan2(lam1.imag, lam1.real) - b * math.atan2(lam2.imag, lam2.real)
    k = round(im / (2.0 * math.pi))
    k = max(-k_bound, min(k_bound, k))
    return math.hypot(re, im - 2.0 * math.pi * k)


def multiplier_relation_search(
    lambda1: complex,
    ell: int,
    lambda2: complex,
    a_max: int,
    b_max: int,
    tol: float = DEFECT_TOL,
) -> list[MultiplierRelation]:
    """All exponent pairs with lambda1^(a ell) = lambda2^b within tol.

    Works on logs; the imaginary part is matched modulo the branch lattice
    with |k| <= a_max ell + b_max. A pair is primitive when no divided-down
    pair also qualifies.
    """
    lam1, lam2 = complex(lambda1), complex(lambda2)
    if abs(lam1) <= 1.0 or abs(lam2) <= 1.0:
        raise PreconditionError("relation search expects repelling multipliers")
    if ell < 1 or a_max < 1 or b_max < 1:
        raise PreconditionError("ell, a_max, b_max must be >= 1")
    k_bound = a_max * ell + b_max
    hits = {}
    for a in range(1, a_max + 1):
        for b in range(1, b_max + 1):
            d = _log_defect(lam1, ell, lam2, a, b, k_bound)
            if d < tol:
                hits[(a, b)] = d
    out = []
    for (a, b), d in sorted(hits.items()):
        g = math.gcd(a, b)
        prim = not any(
            (a // t, b // t) in hits for t in range(2, g + 1) if g % t == 0
        )
        out.append(MultiplierRelation(a=a, b=b, ell=ell, defect=d, primitive=prim))
    return out


def degree_relation_check(d1: int, a: int, d2: int, b: int) -> bool:
    """Exact d1^a == d2^b in integer arithmetic."""
    if d1 < 2 or d2 < 2 or a < 1 or b < 1:
        raise PreconditionError("degrees must be >= 2 and exponents >= 1")
    return int(d1) ** int(a) == int(d2) ** int(b)


def _apply_iterated(f: RationalMap, times: int, pt: SpherePoint) -> SpherePoint:
    for _ in range(times):
        pt = f(pt)
    return pt


def _apply_sigma(sigma, pt: SpherePoint) -> SpherePoint:
    if isinstance(sigma, RationalMap):
        return sigma(pt)
    # plain callables are chart-naive: they get the standard-chart value and
    # cannot be evaluated at infinity (the caller counts that sample as bad)
    out = sigma(pt.to_complex())
    return out if isinstance(out, SpherePoint) else sphere_point(out)


def semiconjugacy_residual(
    f1: RationalMap, a: int, f2: RationalMap, b: int, sigma, samples
) -> float:
    """Max chordal gap between f2^b(sigma(z)) and sigma(f1^a(z)) over samples."""
    if a < 1 or b < 1:
        raise PreconditionError("iterate counts must be >= 1")
    worst = 0.0
    bad = []
    for raw in samples:
        pt = raw if isinstance(raw, SpherePoint) else sphere_point(raw)
        try:
            left = _apply_iterated(f2, b, _apply_sigma(sigma, pt))
            right = _apply_sigma(sigma, _apply_iterated(f1, a, pt))
        except Exception:
            bad.append(pt)
            continue
        worst = max(worst, chordal(left, right))
    if bad:
        shown = ", ".join(repr(p) for p in bad[:5])
        raise PreconditionError(
            f"sigma failed to evaluate at {len(bad)} sample(s): {shown}"
        )
    return worst


def _monomial_matrix(x: np.ndarray, y: np.ndarray, m: int, n: int) -> np.ndarray:
    xp = np.vander(x, m + 1, increasing=True)
    yp = np.vander(y, n + 1, increasing=True)
    return (xp[:, :, None] * yp[:, None, :]).reshape(len(x), (m + 1) * (n + 1))


def fit_invariant_curve(samples, m: int, n: int) -> CurveCandidate:
    """Least-squares algebraic curve of bidegree (m, n) through point pairs.

    Columns of the monomial matrix are scaled to unit norm before the SVD;
    the smallest right singular vector, unscaled and renormalized to unit
    Frobenius norm, is the coefficient matrix. fit_residual is the smallest
    singular value over sqrt(sample count). Near-equal two smallest
    singular values mean the curve is not unique at this bidegree.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise PreconditionError("bidegree must be at least (1,0) or (0,1)")
    pairs = np.asarray([(complex(x), complex(y)) for x, y in samples], dtype=complex)
    finite = np.all(np.isfinite(pairs), axis=1) & np.all(np.abs(pairs) < CHART_CAP, axis=1)
    dropped = int((~finite).sum())
    pairs = pairs[finite]
    need = 3 * (m + 1) * (n + 1)
    if len(pairs) < need:
        raise PreconditionError(
            f"need at least {need} finite samples for bidegree ({m},{n}), have {len(pairs)}"
        )
    mat = _monomial_matrix(pairs[:, 0], pairs[:, 1], m, n)
    norms = np.linalg.norm(mat, axis=0)
    norms[norms == 0] = 1.0
    _, sing, vh = np.linalg.svd(mat / norms, full_matrices=False)
    if len(sing) >= 2 and sing[-1] < RANK_COLLAPSE and sing[-2] < RANK_COLLAPSE:
        raise PreconditionError("curve not unique at this bidegree (rank collapse)")
    coeffs = (vh[-1].conj() / norms).reshape(m + 1, n + 1)
    coeffs = coeffs / np.linalg.norm(coeffs)
    return CurveCandidate(
        bidegree=(m, n),
        coeffs=coeffs,
        fit_residual=float(sing[-1]) / math.sqrt(len(pairs)),
        dropped=dropped,
    )


def _curve_eval_normalized(coeffs: np.ndarray, x: complex, y: complex) -> float:
    m, n = coeffs.shape[0] - 1, coeffs.shape[1] - 1
    xp = np.power(x, np.arange(m + 1))
    yp = np.power(y, np.arange(n + 1))
    mono = xp[:, None] * yp[None, :]
    scale = np.linalg.norm(mono.ravel())
    return abs(np.sum(coeffs * mono)) / scale


def curve_invariance_check(
    curve: CurveCandidate,
    f1: RationalMap,
    a: int,
    f2: RationalMap,
    b: int,
    samples_on_curve,
) -> float:
    """Residual of the curve under (f1^a, f2^b) applied to on-curve samples.

    Sample images landing outside the affine chart are dropped with a
    count. The max normalized |P| at the images is stored back on the
    candidate and returned.
    """
    pairs = [(complex(x), complex(y)) for x, y in samples_on_curve]
    for x, y in pairs:
        if _curve_eval_normalized(curve.coeffs, x, y) >= FIT_TOL:
            raise PreconditionError("a sample is not on the curve at 1e-8")
    worst = 0.0
    dropped = 0
    for x, y in pairs:
        try:
            ix = _apply_iterated(f1, a, sphere_point(x))
            iy = _apply_iterated(f2, b, sphere_point(y))
        except Exception:
            dropped += 1
            continue
        if ix.is_infinity or iy.is_infinity:
            dropped += 1
            continue
        u, v = ix.to_complex(), iy.to_complex()
        if abs(u) > CHART_CAP or abs(v) > CHART_CAP:
            dropped += 1
            continue
        worst = max(worst, _curve_eval_normalized(curve.coeffs, u, v))
    if dropped == len(pairs):
        raise PreconditionError("every sample image left the affine chart")
    curve.invariance_residual = worst
    curve.dropped += dropped
    return worst


def iterate_graph_curve(f: RationalMap, k: int, l: int) -> CurveCandidate:
    """Coefficient matrix of the numerator of f^k(x) - f^l(y).

    The zero set contains the iterated-graph correspondence; it may be
    reducible, which is not decided here.
    """
    if k < 0 or l < 0 or k + l < 1:
        raise PreconditionError("need k + l >= 1 with k, l >= 0")
    if f.degree ** max(k, l) > 1000:
        raise PreconditionError("iterate degree beyond safe coefficient range")
    fk = _iterate_map(f, k)
    fl = _iterate_map(f, l)
    # numerator of Nk(x)/Dk(x) - Nl(y)/Dl(y) as a coefficient matrix in (x, y)
    nk, dk = fk
    nl, dl = fl
    m = max(len(nk), len(dk)) - 1
    n = max(len(nl), len(dl)) - 1
    coeffs = np.zeros((m + 1, n + 1), dtype=complex)
    coeffs[: len(nk), : len(dl)] += nk[:, None] * dl[None, :]
    coeffs[: len(dk), : len(nl)] -= dk[:, None] * nl[None, :]
    if not np.all(np.isfinite(coeffs)):
        raise PreconditionError("coefficient overflow while expanding the iterate")
    nrm = np.linalg.norm(coeffs)
    if nrm == 0:
        raise PreconditionError("iterate difference is identically zero")
    # trim rows/columns that are entirely negligible
    keep_r = np.flatnonzero(np.any(np.abs(coeffs) > 1e-14 * nrm, axis=1))
    keep_c = np.flatnonzero(np.any(np.abs(coeffs) > 1e-14 * nrm, axis=0))
    coeffs = coeffs[: keep_r[-1] + 1, : keep_c[-1] + 1]
    coeffs = coeffs / np.linalg.norm(coeffs)
    return CurveCandidate(
        bidegree=(coeffs.shape[0] - 1, coeffs.shape[1] - 1),
        coeffs=coeffs,
        fit_residual=0.0,
    )


def _iterate_map(f: RationalMap, k: int):
    if k == 0:
        return np.array([0.0, 1.0], dtype=complex), np.array([1.0], dtype=complex)
    g = f
    for _ in range(k - 1):
        g = f.compose(g)
    return g.num.c.astype(complex), g.den.c.astype(complex)


def graph_samples(
    f1: RationalMap,
    lin1: Linearizer,
    f2: RationalMap,
    lin2: Linearizer,
    beta: complex = 1.0,
    ell: int = 1,
    n_samples: int = 200,
    radius: float = 1.0,
):
    """Sample pairs (psi1(zeta), psi2(beta zeta^ell)) along a spiral.

    The second coordinate is the generalized linearizer chi(zeta) =
    psi2(beta zeta^ell); both sides extend past their trust radii by
    functional-equation pullback. Points leaving the standard chart are
    skipped (the curve fit drops them anyway).
    """
    if n_samples < 8:
        raise PreconditionError("need at least 8 graph samples")
    gen = GeneralizedLinearizer(
        inner=lin2,
        ell=ell,
        beta=complex(beta),
        kappa=_root(lin2.lam, ell, 0),
        root_index=0,
    )
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    out = []
    for j in range(n_samples):
        r = radius * (0.15 + 0.85 * (j + 1) / n_samples)
        zeta = r * np.exp(2j * math.pi * ((j * golden) % 1.0))
        try:
            x = eval_linearizer(lin1, f1, zeta)
            y = eval_generalized(gen, f2, zeta)
        except PreconditionError:
            continue
        if x.is_infinity or y.is_infinity:
            continue
        out.append((x.to_complex(), y.to_complex()))
    if len(out) < 8:
        raise PreconditionError("graph sampling lost nearly all points")
    return out


def _root(lam: complex, ell: int, root_index: int) -> complex:
    return complex(
        np.exp((np.log(complex(lam)) + 2j * math.pi * root_index) / ell)
    )


def bidegree_sweep(samples, max_m: int = 4, max_n: int = 4, tol: float = FIT_TOL):
    """First curve by increasing (m+1)(n+1) with fit_residual < tol, or None."""
    cells = sorted(
        ((m, n) for m in range(max_m + 1) for n in range(max_n + 1) if m + n >= 1),
        key=lambda mn: ((mn[0] + 1) * (mn[1] + 1), mn[0], mn[1]),
    )
    for m, n in cells:
        try:
            cand = fit_invariant_curve(samples, m, n)
        except PreconditionError:
            continue
        if cand.fit_residual < tol:
            return cand
    return None
