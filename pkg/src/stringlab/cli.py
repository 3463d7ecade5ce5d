"""Batch command-line front-end.

Every operation is a subcommand emitting JSON (or CSV for tabular data)
that embeds the fully resolved configuration, so a saved artifact is
reproducible byte for byte from its own config block.

Exit codes: 0 success, 1 usage error, 2 computation succeeded but a
verification claim failed.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from . import catalog, example, geometry, polygon, radial, regime
from .errors import StringLabError
from .regime import Params


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        sys.exit(1)


def _json_default(o):
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError("not JSON-serializable: %r" % (o,))


def _emit_json(doc, out):
    text = json.dumps(doc, indent=2, sort_keys=True,
                      default=_json_default) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header, rows, out):
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    finally:
        if out:
            fh.close()


def _config_block(args, keys):
    return {k: getattr(args, k) for k in keys}


def _add_physics(p):
    p.add_argument("--a", type=float, required=True,
                   help="coefficient a in e^{au} (mandatory)")
    p.add_argument("--N", type=float, required=True,
                   help="weight exponent N in |x|^{2N} (mandatory)")


def _add_out(p, formats=("json",)):
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=formats, default=formats[0])


# -- subcommands -------------------------------------------------------

def cmd_interval(args):
    p = Params(args.a, args.N)
    iv = regime.radial_interval(p)
    doc = {
        "config": _config_block(args, ["a", "N"]),
        "regime": {"cell": regime.classify_regime(p).cell,
                   "thresholds": regime.thresholds(p)},
        "interval": {"lo": iv.lo, "hi": iv.hi,
                     "degenerate": iv.degenerate},
    }
    if not p.degenerate:
        lower, upper = regime.necessary_bounds(p)
        doc["necessary_bounds"] = {"lower": lower, "upper": list(upper)}
    _emit_json(doc, args.out)
    return 0


def cmd_solve(args):
    if (args.s is None) == (args.beta is None):
        raise SystemExit(_usage("solve needs exactly one of --s / --beta"))
    p = Params(args.a, args.N)
    cfg = radial.SolverConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    if args.s is not None:
        prof = radial.integrate(args.s, p, cfg)
    else:
        prof = radial.solve_for_mass(p, args.beta, cfg,
                                     tol_beta=args.tol_beta)
    radii = [0.1, 1.0, 10.0, 100.0, 1000.0]
    residuals = {
        "pohozaev_global": regime.pohozaev_global_residual(p, prof.masses),
        "pohozaev_local": {"%g" % r:
                           radial.pohozaev_local_residual(prof, r)
                           for r in radii},
    }
    if args.out and args.format == "csv":
        radial.profile_to_csv(prof, args.out)
        radial.profile_to_json(prof, args.out + ".json", residuals)
    else:
        _emit_json(radial.profile_sidecar(prof, residuals), args.out)
    return 0


def cmd_sweep(args):
    p = Params(args.a, args.N)
    res = radial.sweep_endpoints(p, args.s_min, args.s_max, args.n)
    if args.format == "csv":
        rows = [["%.17g" % r.s,
                 "" if math.isnan(r.beta) else "%.17g" % r.beta,
                 r.status] for r in res.rows]
        _emit_csv(["s", "beta", "status"], rows, args.out)
        summary_out = (args.out + ".json") if args.out else None
    else:
        summary_out = args.out
    doc = {
        "config": _config_block(args, ["a", "N", "s_min", "s_max", "n"]),
        "endpoints": {"low": res.endpoint_low, "high": res.endpoint_high},
        "interval": {"lo": res.interval.lo, "hi": res.interval.hi},
        "matches_interval": res.matches_interval,
        "max_interval_mismatch": res.max_interval_mismatch,
        "monotone_decreasing": res.monotone_decreasing,
    }
    if args.format == "json":
        doc["rows"] = [{"s": r.s,
                        "beta": None if math.isnan(r.beta) else r.beta,
                        "status": r.status} for r in res.rows]
    _emit_json(doc, summary_out)
    return 0 if res.matches_interval else 2


def cmd_catalog(args):
    p = Params(args.a, args.N)
    values = catalog.enumerate_values(p)
    doc = {"config": _config_block(args, ["a", "N"]),
           "values": [bv.jsonable() for bv in values]}
    _emit_json(doc, args.out)
    return 0


def cmd_troyanov(args):
    if args.scan == "equivalence":
        report = geometry.equivalence_scan()
    else:
        report = geometry.claim_never_scan()
    doc = {"config": _config_block(args, ["scan"]),
           "report": report.jsonable()}
    _emit_json(doc, args.out)
    return 0 if not report.violations else 2


def cmd_polygon(args):
    configs = polygon.find_balanced_configs(
        args.N, n_points=args.n_points, beta0=args.beta0,
        n_starts=args.n_starts, seed=args.seed)
    results = []
    all_fit = True
    for cfg in configs:
        xi0, dev = polygon.roots_of_unity_fit(cfg.points)
        fit = dev < polygon.TAU_FIT * abs(xi0)
        all_fit = all_fit and fit
        res = polygon.balance_residual(cfg)
        results.append({
            "points": [[z.real, z.imag] for z in cfg.points],
            "max_balance_residual": float(np.max(np.abs(res))),
            "xi0": [xi0.real, xi0.imag],
            "fit_deviation": dev,
            "roots_of_unity": fit,
            "sum_identity": polygon.sum_identity_check(cfg),
        })
    doc = {"config": _config_block(args, ["N", "n_points", "beta0",
                                          "n_starts", "seed"]),
           "found": len(results), "configs": results}
    _emit_json(doc, args.out)
    return 0 if (results and all_fit) else 2


def cmd_example(args):
    spec = example.make_spec(args.a, args.m1, complex(args.xi))
    seed = example.seed_profile(spec)
    pk = example.find_peaks(spec, seed)
    xi0, dev = polygon.roots_of_unity_fit(pk)
    masses = example.concentration_masses(spec, seed, centers=pk,
                                          delta=args.delta)
    total = sum(masses)
    beta_ref, each_ref = catalog.beta_equal_masses(
        spec.a, spec.N, spec.m1 + 1)
    ok = (dev < 1e-6 * abs(xi0)
          and all(abs(mj - spec.beta0) < 0.05 * spec.beta0
                  for mj in masses)
          and abs(total - spec.beta_total) < 0.02 * spec.beta_total)
    doc = {
        "config": _config_block(args, ["a", "m1", "xi", "delta"]),
        "spec": spec.jsonable(),
        "seed": {"s": seed.s, "beta": seed.beta,
                 "slope_inf": seed.slope_inf},
        "peaks": [[z.real, z.imag] for z in pk],
        "peak_fit": {"xi0": [xi0.real, xi0.imag], "deviation": dev},
        "concentration_masses": masses,
        "total_mass": total,
        "reference": {"beta_equal_masses": beta_ref,
                      "beta_each": each_ref,
                      "beta_total": spec.beta_total},
        "verified": ok,
    }
    _emit_json(doc, args.out)
    return 0 if ok else 2


def cmd_verify(args):
    """Identity suite at one (a, N): solve once and check the mass split,
    the global and local Pohozaev identities, and interval consistency."""
    p = Params(args.a, args.N)
    checks = {}
    iv = regime.radial_interval(p)
    if iv.degenerate:
        target = iv.lo
        prof = radial.integrate(0.0, p)
        checks["rigid_mass"] = {"got": prof.beta, "want": target,
                                "ok": abs(prof.beta - target) < 1e-3}
    else:
        target = 0.5 * (iv.lo + iv.hi)
        prof = radial.solve_for_mass(p, target, tol_beta=1e-6)
        split = regime.mass_split(p, prof.beta)
        checks["mass_split"] = {
            "quadrature": [prof.masses.beta1, prof.masses.beta2],
            "closed_form": [split.beta1, split.beta2],
            "ok": (abs(split.beta1 - prof.masses.beta1) < 1e-3
                   and abs(split.beta2 - prof.masses.beta2) < 1e-3),
        }
    g = regime.pohozaev_global_residual(p, prof.masses)
    checks["pohozaev_global"] = {"residual": g, "ok": g < 1e-4}
    local = max(radial.pohozaev_local_residual(prof, r)
                for r in (0.1, 1.0, 10.0, 100.0, 1000.0))
    checks["pohozaev_local"] = {"max_residual": local, "ok": local < 1e-5}
    ok = all(c["ok"] for c in checks.values())
    doc = {"config": _config_block(args, ["a", "N"]),
           "solver": asdict(prof.config), "checks": checks, "verified": ok}
    _emit_json(doc, args.out)
    return 0 if ok else 2


def _usage(msg):
    sys.stderr.write("error: %s\n" % msg)
    return 1


def build_parser():
    top = _Parser(prog="stringlab",
                  description="Batch tools for the two-term planar "
                              "Liouville-type equation.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interval", parents=[], help="mass intervals and "
                       "regime data")
    _add_physics(p)
    _add_out(p)
    p.set_defaults(fn=cmd_interval)

    p = sub.add_parser("solve", help="one radial solve by datum or mass")
    _add_physics(p)
    p.add_argument("--s", type=float, default=None, help="initial datum")
    p.add_argument("--beta", type=float, default=None, help="target mass")
    p.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", dest="abs_tol", type=float, default=1e-12)
    p.add_argument("--tol-beta", dest="tol_beta", type=float, default=1e-6)
    _add_out(p, formats=("json", "csv"))
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("sweep", help="sweep the datum, extrapolate the "
                       "mass range")
    _add_physics(p)
    p.add_argument("--s-min", dest="s_min", type=float, required=True)
    p.add_argument("--s-max", dest="s_max", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_out(p, formats=("csv", "json"))
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("catalog", help="enumerate admissible limiting "
                       "masses")
    _add_physics(p)
    _add_out(p)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("troyanov", help="conical-metric solvability scans")
    p.add_argument("--scan", choices=("equivalence", "never"),
                   required=True)
    _add_out(p)
    p.set_defaults(fn=cmd_troyanov)

    p = sub.add_parser("polygon", help="search balanced point "
                       "configurations")
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--n-points", dest="n_points", type=int, default=None)
    p.add_argument("--beta0", type=float, default=0.0)
    p.add_argument("--n-starts", dest="n_starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    _add_out(p)
    p.set_defaults(fn=cmd_polygon)

    p = sub.add_parser("example", help="explicit non-radial family "
                       "end-to-end")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--xi", type=float, required=True,
                   help="modulus of the family parameter (phase 0)")
    p.add_argument("--delta", type=float, default=0.3)
    _add_out(p)
    p.set_defaults(fn=cmd_example)

    p = sub.add_parser("verify", help="identity suite at one (a, N)")
    _add_physics(p)
    _add_out(p)
    p.set_defaults(fn=cmd_verify)

    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except StringLabError as e:
        sys.stderr.write("error: %s: %s\n" % (type(e).__name__, e))
        return 1


if __name__ == "__main__":
    sys.exit(main())
