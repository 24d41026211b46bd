import numpy as np
import pytest

from holoscope import (
    Cycle,
    classify,
    cycle_multiplier,
    periodic_point_census,
    periodic_points,
    polynomial_map,
    sphere_point,
)


def _by_period(cycles):
    out = {}
    for c in cycles:
        out.setdefault(c.period, []).append(c)
    return out


def test_squaring_fixed_points(squaring):
    cycles = periodic_points(squaring, 1)
    assert len(cycles) == 3
    kinds = {}
    for c in cycles:
        p = c.points[0]
        key = "inf" if p.is_infinity else round(p.to_complex().real, 6)
        kinds[key] = (c.kind, c.multiplier)
    assert kinds["inf"][0] == "superattracting"
    assert kinds[0.0][0] == "superattracting"
    assert kinds[1.0][0] == "repelling"
    assert kinds[1.0][1] == pytest.approx(2.0, abs=1e-12)


def test_squaring_census_counts(squaring):
    # degree^n + 1 solutions of f^n(z) = z, infinity included
    for n in (1, 2, 3, 4):
        census = periodic_point_census(squaring, n)
        assert census.expected_total == 2**n + 1
        assert census.found_with_multiplicity == census.finite_expected
        assert census.infinity_multiplicity == 1
        assert census.deficit == 0


def test_squaring_period_three_multipliers(squaring):
    cycles = periodic_points(squaring, 3)
    assert len(cycles) == 2  # the six primitive points split into two 3-cycles
    for c in cycles:
        # (f^3)' = 8 z1 z2 z3 and the product of each cycle is 1
        assert c.multiplier == pytest.approx(8.0, abs=1e-9)
        assert c.kind == "repelling"
        # points are seventh roots of unity
        for p in c.points:
            assert abs(p.to_complex() ** 7 - 1.0) < 1e-9


def test_basilica_superattracting_two_cycle(basilica):
    cycles = periodic_points(basilica, 2)
    assert len(cycles) == 1
    c = cycles[0]
    vals = sorted(p.to_complex().real for p in c.points)
    assert vals == pytest.approx([-1.0, 0.0], abs=1e-10)
    assert abs(c.multiplier) < 1e-10
    assert c.kind == "superattracting"


def test_parabolic_flagging():
    # z^2 - 3/4 has a fixed point at -1/2 with multiplier -1
    f = polynomial_map([-0.75, 0.0, 1.0])
    cycles = periodic_points(f, 1)
    kinds = {round(c.points[0].to_complex().real, 4): c.kind for c in cycles if not c.points[0].is_infinity}
    assert kinds[-0.5] == "indifferent"
    # the parabolic point swallows the would-be period-2 cycle: the census
    # balances but the paired roots both sit at -1/2 and the orbit note fires
    census = periodic_point_census(f, 2)
    assert census.deficit == 0
    assert census.notes
    two = periodic_points(f, 2)
    assert len(two) == 1 and two[0].kind == "indifferent"
    for p in two[0].points:
        assert abs(p.to_complex() + 0.5) < 1e-5


def test_cycle_multiplier_rotation_invariant(squaring):
    cycles = periodic_points(squaring, 3)
    pts = list(cycles[0].points)
    m0 = cycle_multiplier(squaring, pts)
    m1 = cycle_multiplier(squaring, pts[1:] + pts[:1])
    m2 = cycle_multiplier(squaring, pts[2:] + pts[:2])
    # canonical factor ordering makes these bit-identical, not just close
    assert m0 == m1 == m2


def test_classify_bands():
    assert classify(0.0) == "superattracting"
    assert classify(0.5) == "attracting"
    assert classify(2.0) == "repelling"
    assert classify(np.exp(1j)) == "indifferent"
    assert classify(1.0 + 5e-7) == "indifferent"  # inside the 1e-6 band


def test_rational_map_periodic_points(newtonish):
    cycles = periodic_points(newtonish, 1)
    reps = {("inf" if c.points[0].is_infinity else round(c.points[0].to_complex().real, 6)): c
            for c in cycles}
    assert "inf" in reps and reps["inf"].kind == "repelling"
    assert reps["inf"].multiplier == pytest.approx(2.0, rel=1e-10)
    assert reps[round(np.sqrt(2), 6)].kind == "superattracting"
    assert reps[round(-np.sqrt(2), 6)].kind == "superattracting"


def test_higher_degree_census():
    f = polynomial_map([0.0, -1.0, 0.0, 1.0])  # z^3 - z
    census = periodic_point_census(f, 2)
    assert census.expected_total == 3**2 + 1
    assert census.found_with_multiplicity == census.finite_expected
    assert census.deficit == 0
