"""Koenigs series against two closed-form conjugacies.

For z^2 at p = 1 the linearizer is psi(zeta) = e^zeta (coefficients 1/n!);
for z^2 - 2 at p = 2 it is psi(zeta) = 2 cosh(sqrt(zeta)) (coefficients
2/(2n)!), since both maps are semiconjugate to doubling.
"""

import math

import numpy as np
import pytest

from holoscope import (
    INF,
    PreconditionError,
    chordal,
    eval_generalized,
    eval_linearizer,
    generalized_koenigs,
    koenigs_series,
    linearizer_residual,
    polynomial_map,
    sphere_point,
)


def test_exponential_oracle(squaring):
    L = koenigs_series(squaring, 1.0, trunc=24)
    assert L.lam == pytest.approx(2.0, abs=1e-14)
    for n in range(20):
        assert abs(L.coeffs[n] - 1.0 / math.factorial(n)) < 1e-10


def test_cosh_oracle(chebyshev2):
    L = koenigs_series(chebyshev2, 2.0, trunc=24)
    assert L.lam == pytest.approx(4.0, abs=1e-13)
    for n in range(20):
        assert abs(L.coeffs[n] - 2.0 / math.factorial(2 * n)) < 1e-10


def test_residual_certified_at_trust_radius(squaring, chebyshev2):
    for f, p in ((squaring, 1.0), (chebyshev2, 2.0)):
        L = koenigs_series(f, p)
        assert L.trust_radius > 0
        assert L.residual_at_trust < 1e-8
        # re-measuring through the public helper stays consistent
        again = linearizer_residual(L, f, L.trust_radius)
        assert again < 1e-8


def test_non_repelling_point_rejected(squaring, basilica):
    with pytest.raises(PreconditionError):
        koenigs_series(squaring, 0.0)  # superattracting
    with pytest.raises(PreconditionError):
        koenigs_series(basilica, 0.3)  # not even fixed


def test_evaluation_inside_disk(squaring):
    L = koenigs_series(squaring, 1.0)
    for zeta in (0.1, 0.3 + 0.2j, -0.4j):
        got = eval_linearizer(L, squaring, zeta)
        assert chordal(got, np.exp(zeta)) < 1e-12


def test_functional_equation_extends_past_trust_radius(squaring):
    L = koenigs_series(squaring, 1.0)
    zeta = 3.0 * L.trust_radius * np.exp(0.7j)
    got = eval_linearizer(L, squaring, zeta)
    # e^zeta may land outside the standard chart; compare on the sphere
    assert chordal(got, sphere_point(np.exp(zeta))) < 1e-9


def test_repelling_fixed_point_at_infinity(newtonish):
    L = koenigs_series(newtonish, INF)
    assert L.conjugated
    assert L.lam == pytest.approx(2.0, abs=1e-12)
    got = eval_linearizer(L, newtonish, 1e-3)
    assert got.chart == "reciprocal"
    assert chordal(got, INF) < 0.01


def test_random_quadratics_linearize(rng):
    count = 0
    while count < 5:
        b, c = rng.standard_normal(2) * 0.8
        f = polynomial_map([c, b, 1.0])
        # fixed points of z^2 + bz + c
        roots = np.roots([1.0, b - 1.0, c])
        rep = [r for r in roots if abs(2 * r + b) > 1.2]
        if not rep:
            continue
        L = koenigs_series(f, complex(rep[0]))
        assert L.residual_at_trust < 1e-8
        count += 1


def test_generalized_linearizer_on_squaring(squaring):
    G = generalized_koenigs(squaring, 1.0, ell=2, beta=1.0)
    assert G.kappa**2 == pytest.approx(G.inner.lam, rel=1e-12)
    # chi(zeta) = e^{zeta^2}; check both the value and the twisted equation
    for zeta in (0.2, 0.5j, 0.4 + 0.3j):
        assert chordal(eval_generalized(G, squaring, zeta), np.exp(zeta**2)) < 1e-10
        lhs = squaring(eval_generalized(G, squaring, zeta))
        rhs = eval_generalized(G, squaring, G.kappa * zeta)
        assert chordal(lhs, rhs) < 1e-10


def test_generalized_rejects_bad_parameters(squaring):
    with pytest.raises(PreconditionError):
        generalized_koenigs(squaring, 1.0, ell=0, beta=1.0)
    with pytest.raises(PreconditionError):
        generalized_koenigs(squaring, 1.0, ell=2, beta=0.0)
