"""Batch front-end: one workflow per invocation, artifacts plus manifest.

Exit codes: 2 for configuration problems (bad flags, malformed files),
3 for violated numeric preconditions, 4 for anything internal. Every
seeded workflow rerun with the same config writes byte-identical CSV and
JSON artifacts; manifests carry wall time and are exempt.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import __version__
from .circle import BlaschkeProduct, lyapunov_spectrum, rigidity_verdict
from .correspond import (
    bidegree_sweep,
    curve_invariance_check,
    degree_relation_check,
    graph_samples,
    multiplier_relation_search,
)
from .errors import ConfigError, HoloscopeError, InternalError, PreconditionError
from .expansion import measure_ball_scaling, shrink_rate_estimate
from .io import (
    atomic_write_text,
    parse_complex,
    parse_config_text,
    parse_map_file,
    parse_points_file,
    read_measure_csv,
    write_json,
    write_manifest,
    write_measure_csv,
    write_ppm,
)
from .linearize import koenigs_series
from .maps import RationalMap
from .measures import brownian_exit_measure, green_function, measure_compare, sample_mmem
from .orbits import periodic_points
from .render import render_density, render_escape


def _threads_cap() -> int:
    """HOLOSCOPE_THREADS validates as a positive integer parallelism cap.

    Computation here is single-threaded vectorized numpy, so any valid cap
    is honored trivially; an invalid value is still a config error.
    """
    raw = os.environ.get("HOLOSCOPE_THREADS")
    if raw is None:
        return 0
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"HOLOSCOPE_THREADS must be an integer, got '{raw}'") from None
    if cap < 1:
        raise ConfigError(f"HOLOSCOPE_THREADS must be >= 1, got {cap}")
    return cap


def _pair(val):
    return [val.real, val.imag]


def _window(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise ConfigError("window must be 'xmin,xmax,ymin,ymax'")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"bad window '{text}'") from None


def _pixels(text: str):
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise ConfigError(f"pixels must be 'WxH', got '{text}'") from None


def cmd_linearize(args, t0):
    f = parse_map_file(args.map)
    lin = koenigs_series(f, parse_complex(args.point), args.trunc)
    payload = {
        "base": _pair(lin.base.to_complex()) if not lin.base.is_infinity else None,
        "lambda": _pair(lin.lam),
        "coeffs": [_pair(c) for c in lin.coeffs],
        "trust_radius": lin.trust_radius,
        "residual": lin.residual_at_trust,
        "conjugated": lin.conjugated,
    }
    write_json(args.out, payload)
    params = {"map": args.map, "point": args.point, "trunc": args.trunc}
    write_manifest(args.out, "linearize", params, inputs=[args.map], t0=t0)
    print(f"linearize: trust_radius={lin.trust_radius:g} residual={lin.residual_at_trust:.3e}")
    return 0


def cmd_periodic(args, t0):
    f = parse_map_file(args.map)
    cycles = periodic_points(f, args.period)
    payload = [
        {
            "period": c.period,
            "points": [None if p.is_infinity else _pair(p.to_complex()) for p in c.points],
            "multiplier": _pair(c.multiplier),
            "kind": c.kind,
            "multiplicity": c.multiplicity,
        }
        for c in cycles
    ]
    write_json(args.out, payload)
    params = {"map": args.map, "period": args.period}
    write_manifest(args.out, "periodic", params, inputs=[args.map], t0=t0)
    print(f"periodic: {len(cycles)} primitive cycles of period {args.period}")
    return 0


def cmd_mmem(args, t0):
    f = parse_map_file(args.map)
    mu = sample_mmem(f, args.n, depth=args.depth, z0=parse_complex(args.z0), seed=args.seed)
    write_measure_csv(args.out, mu)
    params = {
        "map": args.map, "n": args.n, "depth": args.depth, "z0": args.z0, "seed": args.seed,
    }
    write_manifest(args.out, "mmem", params, inputs=[args.map], t0=t0)
    print(f"mmem: {len(mu)} samples -> {args.out}")
    return 0


def cmd_green(args, t0):
    f = parse_map_file(args.map)
    g = green_function(f, parse_complex(args.z))
    print(f"{g.value:.6f}")
    if args.out:
        write_json(args.out, {
            "value": g.value, "escape_time": g.escape_time, "converged": g.converged,
        })
        params = {"map": args.map, "z": args.z}
        write_manifest(args.out, "green", params, inputs=[args.map], t0=t0)
    return 0


def cmd_harmonic(args, t0):
    f = parse_map_file(args.map)
    mu = brownian_exit_measure(
        f, parse_complex(args.z_start), args.walks, eps_stop=args.eps_stop, seed=args.seed,
    )
    write_measure_csv(args.out, mu)
    params = {
        "map": args.map, "z_start": args.z_start, "walks": args.walks,
        "eps_stop": args.eps_stop, "seed": args.seed,
    }
    write_manifest(args.out, "harmonic", params, inputs=[args.map], t0=t0)
    print(f"harmonic: {len(mu)} exits -> {args.out}")
    return 0


def cmd_compare(args, t0):
    mu_a = read_measure_csv(args.a)
    mu_b = read_measure_csv(args.b)
    rep = measure_compare(mu_a, mu_b, _window(args.window), bins=args.bins)
    payload = {
        "tv": rep.tv, "ratio_low": rep.ratio_low, "ratio_high": rep.ratio_high,
        "occupied_bins": rep.occupied_bins, "bins": rep.bins, "window": list(rep.window),
        "n_a": rep.n_a, "n_b": rep.n_b, "notes": rep.notes,
    }
    write_json(args.out, payload)
    params = {"a": args.a, "b": args.b, "window": args.window, "bins": args.bins}
    write_manifest(args.out, "compare", params, inputs=[args.a, args.b], t0=t0)
    print(f"compare: tv={rep.tv:.4f} occupied={rep.occupied_bins}")
    return 0


def cmd_correspond(args, t0):
    f1 = parse_map_file(args.map1)
    f2 = parse_map_file(args.map2)
    lin1 = koenigs_series(f1, parse_complex(args.p1), args.trunc)
    lin2 = koenigs_series(f2, parse_complex(args.p2), args.trunc)
    rels = multiplier_relation_search(lin1.lam, args.ell, lin2.lam, args.amax, args.bmax)
    checks = [
        {"a": r.a, "b": r.b, "holds": degree_relation_check(f1.degree, r.a, f2.degree, r.b)}
        for r in rels if r.primitive
    ]
    curve_payload = None
    samples = graph_samples(
        f1, lin1, f2, lin2, beta=parse_complex(args.beta), ell=args.ell,
        n_samples=args.samples, radius=args.radius,
    )
    cand = bidegree_sweep(samples)
    if cand is not None:
        prim = [r for r in rels if r.primitive]
        if prim:
            curve_invariance_check(cand, f1, prim[0].a, f2, prim[0].b, samples)
        curve_payload = {
            "bidegree": list(cand.bidegree),
            "coeffs": cand.coeffs,
            "fit_residual": cand.fit_residual,
            "invariance_residual": cand.invariance_residual,
            "reducible": cand.reducible,
        }
    payload = {
        "multipliers": [_pair(lin1.lam), _pair(lin2.lam)],
        "relations": [
            {"a": r.a, "b": r.b, "ell": r.ell, "defect": r.defect, "primitive": r.primitive}
            for r in rels
        ],
        "degree_checks": checks,
        "curve": curve_payload,
    }
    write_json(args.out, payload)
    params = {
        "map1": args.map1, "map2": args.map2, "p1": args.p1, "p2": args.p2,
        "amax": args.amax, "bmax": args.bmax, "ell": args.ell, "beta": args.beta,
        "trunc": args.trunc, "samples": args.samples, "radius": args.radius,
    }
    write_manifest(args.out, "correspond", params, inputs=[args.map1, args.map2], t0=t0)
    n_prim = sum(r.primitive for r in rels)
    print(f"correspond: {len(rels)} relations ({n_prim} primitive) -> {args.out}")
    return 0


def cmd_blaschke(args, t0):
    cfg = parse_config_text(args.zeros)
    if "zeros" not in cfg:
        raise ConfigError(f"{args.zeros}: missing key 'zeros'")
    zeros = [
        complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e)
        for e in cfg["zeros"]
    ]
    B = BlaschkeProduct(np.array(zeros), rotation=float(cfg.get("rotation", 0.0)))
    S = lyapunov_spectrum(B, args.nmax)
    lines = ["period,angle,exponent"]
    for e in S.entries:
        lines.append(f"{e.period},{e.angle!r},{e.exponent!r}")
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    params = {"zeros": args.zeros, "nmax": args.nmax}
    write_manifest(args.out, "blaschke", params, inputs=[args.zeros], t0=t0)
    msg = f"blaschke: {len(S.entries)} primitive cycles"
    if args.nmax >= 6:
        msg += f", verdict {rigidity_verdict(S).verdict}"
    print(msg)
    return 0


def cmd_tce(args, t0):
    f = parse_map_file(args.map)
    est = shrink_rate_estimate(
        f, parse_complex(args.point), args.radius,
        n_max=args.nmax, branch_budget=args.budget, seed=args.seed,
    )
    write_json(args.out, {
        "center": _pair(est.center),
        "radius": est.radius,
        "diam_by_n": est.diam_by_n,
        "branch_count_by_n": est.branch_count_by_n,
        "fitted_rate": est.fitted_rate,
        "truncated_at": est.truncated_at,
    })
    params = {
        "map": args.map, "point": args.point, "radius": args.radius,
        "nmax": args.nmax, "budget": args.budget, "seed": args.seed,
    }
    write_manifest(args.out, "tce", params, inputs=[args.map], t0=t0)
    print(f"tce: fitted_rate={est.fitted_rate:.4f}")
    return 0


def cmd_ballscale(args, t0):
    mu = read_measure_csv(args.measure)
    points = parse_points_file(args.points)
    radii = np.geomspace(args.rmin, args.rmax, args.nradii)
    rep = measure_ball_scaling(mu, points, radii)
    lines = ["re,im,exponent"]
    for x, s in rep.per_point:
        z = complex(x)
        lines.append(f"{z.real!r},{z.imag!r},{'' if s is None else repr(s)}")
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    params = {
        "measure": args.measure, "points": args.points,
        "rmin": args.rmin, "rmax": args.rmax, "nradii": args.nradii,
    }
    write_manifest(args.out, "ballscale", params, inputs=[args.measure, args.points], t0=t0)
    print(f"ballscale: theta_hat={rep.theta_hat:.4f} flagged={len(rep.flagged)}")
    return 0


def cmd_render(args, t0):
    window = _window(args.window)
    pixels = _pixels(args.pixels)
    if args.mode == "escape-time":
        f = parse_map_file(args.map)
        img = render_escape(f, window, pixels)
        inputs = [args.map]
    else:
        if not args.measure:
            raise ConfigError("measure-density mode needs --measure")
        mu = read_measure_csv(args.measure)
        img = render_density(mu, window, pixels)
        inputs = [args.measure]
    write_ppm(args.out, img)
    params = {
        "mode": args.mode, "window": args.window, "pixels": args.pixels,
        "map": args.map, "measure": args.measure,
    }
    write_manifest(args.out, "render", params, inputs=inputs, t0=t0)
    print(f"render: {pixels[0]}x{pixels[1]} {args.mode} -> {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="holoscope",
        description="numerical toolkit for holomorphic dynamics on the sphere",
    )
    top.add_argument("--version", action="version", version=f"holoscope {__version__}")
    sub = top.add_subparsers(dest="workflow", required=True)

    p = sub.add_parser("linearize", help="Koenigs series at a repelling fixed point")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True, help="fixed point as re,im")
    p.add_argument("--trunc", type=int, default=64)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_linearize)

    p = sub.add_parser("periodic", help="periodic cycles of a given period")
    p.add_argument("--map", required=True)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_periodic)

    p = sub.add_parser("mmem", help="sample the maximal-entropy measure")
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=24)
    p.add_argument("--z0", default="2,0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_mmem)

    p = sub.add_parser("green", help="Green function of the basin of infinity")
    p.add_argument("--map", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_green)

    p = sub.add_parser("harmonic", help="harmonic measure by walk-on-spheres")
    p.add_argument("--map", required=True)
    p.add_argument("--z-start", dest="z_start", default="1000,0")
    p.add_argument("--walks", type=int, required=True)
    p.add_argument("--eps-stop", dest="eps_stop", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_harmonic)

    p = sub.add_parser("compare", help="binned total variation of two measures")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--window", required=True, help="xmin,xmax,ymin,ymax")
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("correspond", help="multiplier relations and invariant curves")
    p.add_argument("--map1", required=True)
    p.add_argument("--map2", required=True)
    p.add_argument("--p1", required=True, help="fixed point of map1 as re,im")
    p.add_argument("--p2", required=True, help="fixed point of map2 as re,im")
    p.add_argument("--amax", type=int, default=6)
    p.add_argument("--bmax", type=int, default=6)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--beta", default="1,0")
    p.add_argument("--trunc", type=int, default=64)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_correspond)

    p = sub.add_parser("blaschke", help="Lyapunov spectrum of an expanding Blaschke product")
    p.add_argument("--zeros", required=True, help="config file with zeros = [...]")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_blaschke)

    p = sub.add_parser("tce", help="backward shrink-rate diagnostic")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--budget", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_tce)

    p = sub.add_parser("ballscale", help="measure ball-scaling exponents")
    p.add_argument("--measure", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--rmin", type=float, default=3e-3)
    p.add_argument("--rmax", type=float, default=0.3)
    p.add_argument("--nradii", type=int, default=9)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_ballscale)

    p = sub.add_parser("render", help="PPM image of a basin or a measure")
    p.add_argument("--map", default=None)
    p.add_argument("--measure", default=None)
    p.add_argument("--window", required=True)
    p.add_argument("--pixels", default="512x512")
    p.add_argument("--mode", choices=["escape-time", "measure-density"], required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_render)
    return top


def main(argv=None) -> int:
    t0 = time.monotonic()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _threads_cap()
        if args.workflow == "render" and args.mode == "escape-time" and not args.map:
            raise ConfigError("escape-time mode needs --map")
        return args.fn(args, t0)
    except ConfigError as e:
        print(f"holoscope: config error: {e}", file=sys.stderr)
        return 2
    except PreconditionError as e:
        print(f"holoscope: precondition failed: {e}", file=sys.stderr)
        return 3
    except InternalError as e:
        print(f"holoscope: internal error: {e}", file=sys.stderr)
        return 4
    except HoloscopeError as e:
        print(f"holoscope: error: {e}", file=sys.stderr)
        return 4
    except OSError as e:
        print(f"holoscope: io error: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
