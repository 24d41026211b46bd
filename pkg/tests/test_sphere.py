import numpy as np
import pytest

from holoscope import INF, PreconditionError, SpherePoint, chordal, sphere_point


def test_chart_selection_by_modulus():
    assert sphere_point(1.5).chart == "standard"
    assert sphere_point(3.0).chart == "reciprocal"
    assert sphere_point(3.0).value == pytest.approx(1 / 3.0)
    # boundary stays standard so round-tripping |z| = 2 never flips charts
    assert sphere_point(2.0).chart == "standard"


def test_infinity_identity():
    assert INF.is_infinity
    assert sphere_point(float("inf")).is_infinity
    assert sphere_point(None).is_infinity
    with pytest.raises(PreconditionError):
        INF.to_complex()
    with pytest.raises(PreconditionError):
        sphere_point(complex(float("nan"), 0.0))


def test_representative_bound_enforced():
    with pytest.raises(PreconditionError):
        SpherePoint("standard", 5.0)
    with pytest.raises(PreconditionError):
        SpherePoint("elsewhere", 0.5)


def test_chordal_known_values():
    # diameter-1 normalization: antipodal pairs sit at distance 1
    assert chordal(0.0, INF) == pytest.approx(1.0)
    assert chordal(1.0, -1.0) == pytest.approx(1.0)
    assert chordal(0.0, 1.0) == pytest.approx(1.0 / np.sqrt(2.0))
    assert chordal(INF, INF) == 0.0


def test_chordal_chart_agreement(rng):
    # the mixed-chart formula must agree with the naive planar one
    z = rng.standard_normal(50) + 1j * rng.standard_normal(50)
    w = 3.0 * (rng.standard_normal(50) + 1j * rng.standard_normal(50))
    for a, b in zip(z, w):
        naive = abs(a - b) / np.sqrt((1 + abs(a) ** 2) * (1 + abs(b) ** 2))
        assert chordal(a, b) == pytest.approx(naive, rel=1e-12)
        assert chordal(a, b) == pytest.approx(chordal(b, a), rel=1e-15)


def test_chordal_triangle_inequality(rng):
    pts = 10.0 * (rng.standard_normal(30) + 1j * rng.standard_normal(30))
    for a, b, c in zip(pts[:10], pts[10:20], pts[20:]):
        assert chordal(a, c) <= chordal(a, b) + chordal(b, c) + 1e-12


def test_chordal_large_modulus_stable():
    # near-infinity pairs must not lose precision to overflow
    a, b = 1e12, 2e12
    d = chordal(a, b)
    assert 0 < d < 1e-12
    assert chordal(a, INF) == pytest.approx(1.0 / np.sqrt(1 + 1e24), rel=1e-9)
