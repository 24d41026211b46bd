import math

import numpy as np
import pytest

from holoscope import (
    BlaschkeProduct,
    PreconditionError,
    circle_periodic_orbits,
    lyapunov_spectrum,
    rigidity_verdict,
    spectrum_interval_check,
)


def monomial(d):
    return BlaschkeProduct(np.zeros(d))


def test_blaschke_validation():
    with pytest.raises(PreconditionError):
        BlaschkeProduct(np.array([1.2]))  # zero outside the disk
    with pytest.raises(PreconditionError):
        BlaschkeProduct(np.array([]))


def test_monomial_is_plain_power_map():
    B = monomial(3)
    assert B.degree == 3 and B.expanding
    z = np.exp(2j * np.pi * np.linspace(0.1, 0.9, 7))
    assert np.allclose(B(z), z**3, atol=1e-14)
    assert np.allclose(B.deriv_abs_circle(np.linspace(0, 1, 9)), 3.0, atol=1e-13)


def test_zero_at_origin_forces_expansion():
    # |B'| on the circle is 1 + sum of positive Poisson kernels when one
    # factor is z itself, so any such product is expanding
    B = BlaschkeProduct(np.array([0.0, 0.6j]))
    assert B.expanding and B.min_deriv > 1.0


def test_non_expanding_product_detected_and_rejected():
    B = BlaschkeProduct(np.array([0.9, -0.9]))
    assert not B.expanding
    with pytest.raises(PreconditionError):
        lyapunov_spectrum(B, 3)


def test_lift_is_a_degree_d_cover():
    B = BlaschkeProduct(np.array([0.0, 0.5]))
    xs = np.linspace(0.0, 1.0, 11)
    for x in xs:
        lifted = B.lift(np.array([x + 1.0]))[0]
        assert lifted == pytest.approx(B.lift(np.array([x]))[0] + B.degree, abs=1e-9)
    # monotone on a fine grid
    fine = B.lift(np.linspace(0, 1, 2001))
    assert np.all(np.diff(fine) > 0)


def test_doubling_map_lift_is_linear():
    B = monomial(2)
    xs = np.linspace(0, 0.99, 23)
    assert np.allclose(B.lift(xs), 2.0 * xs, atol=1e-12)


def test_periodic_angles_of_monomial():
    # fixed angles of theta -> d theta mod 1 with period n: k / (d^n - 1)
    B = monomial(3)
    for n in (1, 2, 3):
        got = np.sort(circle_periodic_orbits(B, n))
        want = np.arange(3**n - 1) / (3**n - 1)
        assert np.allclose(got, want, atol=1e-10)


def test_spectrum_census_and_monomial_exponents():
    B = monomial(3)
    S = lyapunov_spectrum(B, 4)
    # census counts every solution of F^n(x) = x, primitive or not
    assert S.census == {n: 3**n - 1 for n in (1, 2, 3, 4)}
    # primitive cycle counts: 2, 3, 8, 18
    periods = [e.period for e in S.entries]
    assert [periods.count(n) for n in (1, 2, 3, 4)] == [2, 3, 8, 18]
    assert np.max(np.abs(S.exponents() - math.log(3.0))) < 1e-11


def test_spectrum_census_counts_generic():
    B = BlaschkeProduct(np.array([0.0, 0.5]))
    S = lyapunov_spectrum(B, 5)
    assert S.census == {n: 2**n - 1 for n in range(1, 6)}


def test_interval_check_gap_shrinks():
    B = BlaschkeProduct(np.array([0.0, 0.5]))
    g5 = spectrum_interval_check(lyapunov_spectrum(B, 5)).largest_gap
    g8 = spectrum_interval_check(lyapunov_spectrum(B, 8)).largest_gap
    assert 0 < g8 < g5


def test_rigidity_monomial_verdict():
    S = lyapunov_spectrum(monomial(2), 6)
    rep = rigidity_verdict(S)
    assert rep.verdict == "monomial-conjugate"
    assert rep.spread < 1e-9
    assert rep.mean == pytest.approx(math.log(2.0), abs=1e-9)


def test_rigidity_non_rigid_verdict():
    B = BlaschkeProduct(np.array([0.0, 0.5]))
    rep = rigidity_verdict(lyapunov_spectrum(B, 6))
    assert rep.verdict == "non-rigid"
    assert rep.spread > 0.1


def test_rigidity_needs_deep_spectrum():
    with pytest.raises(PreconditionError):
        rigidity_verdict(lyapunov_spectrum(monomial(2), 5))


def test_rotation_only_changes_angles_not_exponents():
    plain = lyapunov_spectrum(monomial(2), 3)
    turned = lyapunov_spectrum(BlaschkeProduct(np.zeros(2), rotation=0.7), 3)
    assert plain.census == turned.census
    assert np.allclose(np.sort(plain.exponents()), np.sort(turned.exponents()), atol=1e-10)
