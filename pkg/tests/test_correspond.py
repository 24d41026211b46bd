import numpy as np
import pytest

from holoscope import (
    PreconditionError,
    bidegree_sweep,
    curve_invariance_check,
    degree_relation_check,
    fit_invariant_curve,
    graph_samples,
    iterate_graph_curve,
    koenigs_series,
    multiplier_relation_search,
    semiconjugacy_residual,
)
from holoscope.correspond import _curve_eval_normalized


def test_relation_search_finds_primitive_pair():
    rels = multiplier_relation_search(2.0, 1, 4.0, 6, 6)
    prim = [(r.a, r.b) for r in rels if r.primitive]
    assert prim == [(2, 1)]
    assert all(r.defect < 1e-12 for r in rels)
    # the doubled pairs are found but not primitive
    assert {(r.a, r.b) for r in rels} == {(2, 1), (4, 2), (6, 3)}


def test_relation_search_branch_lattice():
    # lambda values differing by a full turn of phase still satisfy a
    # relation once the 2 pi i branch is searched
    lam1 = 2.0 * np.exp(1j * np.pi / 3)
    lam2 = lam1**3
    rels = multiplier_relation_search(lam1, 1, lam2, 4, 4)
    assert any(r.a == 3 and r.b == 1 for r in rels)


def test_relation_search_negative_control():
    assert multiplier_relation_search(2.0, 1, 3.0, 20, 20, tol=1e-9) == []


def test_degree_relation_check():
    assert degree_relation_check(2, 2, 4, 1)
    assert degree_relation_check(3, 2, 9, 1)
    assert not degree_relation_check(2, 3, 4, 1)


def test_semiconjugacy_residual_oracle(squaring, quartic, rng):
    # sigma(z) = z^2 intertwines z^2 (twice) with z^4 (once)
    samples = 0.8 * np.exp(2j * np.pi * rng.random(40))
    res = semiconjugacy_residual(squaring, 2, quartic, 1, lambda z: z * z, samples)
    assert res < 1e-12
    bad = semiconjugacy_residual(squaring, 1, quartic, 1, lambda z: z * z, samples)
    assert bad > 0.01


def test_fit_recovers_parabola(rng):
    t = rng.standard_normal(60) + 1j * rng.standard_normal(60)
    samples = list(zip(t, t * t))
    cand = fit_invariant_curve(samples, 2, 1)
    assert cand.fit_residual < 1e-12
    # zero on the curve, order-one off it
    assert _curve_eval_normalized(cand.coeffs, 0.7, 0.49) < 1e-10
    assert _curve_eval_normalized(cand.coeffs, 0.7, 1.3) > 0.05


def test_fit_rank_collapse_rejected(rng):
    # on y = x^2 the bidegree (2,2) family contains two independent curves
    # (x^2 - y) and x(x^2 - y) alike; the nullspace is degenerate
    t = rng.standard_normal(120) + 1j * rng.standard_normal(120)
    with pytest.raises(PreconditionError):
        fit_invariant_curve(list(zip(t, t * t)), 2, 2)


def test_fit_needs_enough_samples(rng):
    t = rng.standard_normal(10)
    with pytest.raises(PreconditionError):
        fit_invariant_curve(list(zip(t, t * t)), 2, 1)


def test_random_cloud_has_no_curve(rng):
    x = rng.random(200) + 1j * rng.random(200)
    y = rng.random(200) + 1j * rng.random(200)
    cand = fit_invariant_curve(list(zip(x, y)), 2, 2)
    assert cand.fit_residual > 1e-3
    assert bidegree_sweep(list(zip(x, y)), tol=1e-8) is None


def test_bidegree_sweep_picks_smallest_cell(rng):
    t = rng.standard_normal(80) + 1j * rng.standard_normal(80)
    cand = bidegree_sweep(list(zip(t, t * t)))
    assert cand is not None and cand.bidegree == (2, 1)


def test_iterate_graph_curve_matches_direct_graph(squaring, rng):
    cand = iterate_graph_curve(squaring, 1, 0)  # {(x, y): x^2 = y}
    t = rng.standard_normal(20) + 1j * rng.standard_normal(20)
    for v in t:
        assert _curve_eval_normalized(cand.coeffs, v, v * v) < 1e-12


def test_full_pipeline_squaring_vs_quartic(squaring, quartic):
    lin1 = koenigs_series(squaring, 1.0)
    lin2 = koenigs_series(quartic, 1.0)
    samples = graph_samples(squaring, lin1, quartic, lin2, beta=2.0, n_samples=200)
    cand = bidegree_sweep(samples)
    assert cand is not None and cand.bidegree == (2, 1)
    assert cand.fit_residual < 1e-8
    res = curve_invariance_check(cand, squaring, 2, quartic, 1, samples)
    assert res < 1e-8
    assert cand.invariance_residual == res


def test_invariance_check_rejects_off_curve_samples(squaring, quartic, rng):
    lin1 = koenigs_series(squaring, 1.0)
    lin2 = koenigs_series(quartic, 1.0)
    samples = graph_samples(squaring, lin1, quartic, lin2, beta=2.0, n_samples=200)
    cand = bidegree_sweep(samples)
    junk = [(0.5 + 0.1j, 3.0)]
    with pytest.raises(PreconditionError):
        curve_invariance_check(cand, squaring, 2, quartic, 1, junk)
