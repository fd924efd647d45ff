"""Batch command-line interface: compute, verify, sweep.

Exit codes: 0 success; 1 invalid flags; 2 route disagreement (compute
--route all) or identity failure (verify); 3 quadrature non-convergence.

KOFF2D_DEFAULT_TOL overrides the default quadrature rel_tol (1e-10); an
explicit --tol flag wins over the environment.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import identities, offrate
from .errors import DomainError, ParameterError
from .model import DimensionlessParams, PhysicalParams, nondimensionalize
from .quadrature import QuadratureConfig

# the CLI reconciles routes, so its Stieltjes sequence goes deeper than the
# library default (corner parameter sets need x below 1e-8 to certify 1e-6)
CLI_X_SEQUENCE = tuple(10.0 ** -k for k in range(1, 13))

COMPUTE_CSV_FIELDS = ("ka", "kd", "D", "a", "h_tilde", "kappa_tilde", "route",
                      "value", "error_estimate", "converged", "wall_time")
SWEEP_CSV_FIELDS = ("param_name", "param_value", "h_tilde", "kappa_tilde",
                    "route", "value", "error_estimate", "converged")


class _Parser(argparse.ArgumentParser):
    # spec reserves exit 2 for disagreement; flag errors exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _fmt17(v):
    if isinstance(v, float):
        return "%.17g" % v
    return "" if v is None else str(v)


def _fmt10(v):
    if isinstance(v, float):
        return "%.10g" % v
    return "" if v is None else str(v)


def build_parser() -> _Parser:
    parser = _Parser(prog="koff2d",
                     description="Average bound-state lifetime (inverse off-rate) "
                                 "of a reversibly binding pair diffusing in 2D.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_param_flags(p, physical=True, dimensionless=True):
        if physical:
            p.add_argument("--ka", type=float, help="intrinsic association constant (area/time)")
            p.add_argument("--kd", type=float, help="intrinsic dissociation constant (1/time)")
            p.add_argument("--D", type=float, help="diffusion constant (area/time)")
            p.add_argument("--a", type=float, help="encounter radius (length)")
        if dimensionless:
            p.add_argument("--h-tilde", type=float, help="dimensionless association strength")
            p.add_argument("--kappa-tilde", type=float, help="dimensionless dissociation constant")

    pc = sub.add_parser("compute", help="compute 1/k_off (or the dimensionless finite part)")
    add_param_flags(pc)
    pc.add_argument("--route", choices=["closed", "quadrature", "stieltjes", "all"],
                    default="closed")
    pc.add_argument("--tol", type=float, help="quadrature rel_tol (default 1e-10 or "
                                              "KOFF2D_DEFAULT_TOL)")
    pc.add_argument("--format", choices=["csv", "json", "table"], default="table")

    pv = sub.add_parser("verify", help="verify the transform identities numerically")
    pv.add_argument("--identity", choices=["double-laplace", "ismail", "master", "all"],
                    default="all")
    pv.add_argument("--probes", type=str, help="comma-separated probe points, e.g. 0.5,1,2,5")
    pv.add_argument("--tol", type=float, help="pass tolerance override")
    pv.add_argument("--h-tilde", type=float, default=1.0, help="master-identity h (default 1)")
    pv.add_argument("--kappa-tilde", type=float, default=1.0,
                    help="master-identity kappa (default 1)")

    ps = sub.add_parser("sweep", help="emit a CSV table over a parameter range")
    ps.add_argument("--param", required=True,
                    choices=["h-tilde", "kappa-tilde", "D", "ka", "kd", "a"])
    ps.add_argument("--from", dest="lo", type=float, required=True)
    ps.add_argument("--to", dest="hi", type=float, required=True)
    ps.add_argument("--points", type=int, required=True)
    scale = ps.add_mutually_exclusive_group()
    scale.add_argument("--log", action="store_true", dest="log")
    scale.add_argument("--linear", action="store_false", dest="log")
    ps.set_defaults(log=False)
    ps.add_argument("--route", choices=["closed", "quadrature", "stieltjes", "all"],
                    default="closed")
    ps.add_argument("--tol", type=float)
    add_param_flags(ps)
    return parser


def _default_rel_tol():
    raw = os.environ.get("KOFF2D_DEFAULT_TOL")
    if raw is None:
        return 1e-10
    try:
        return float(raw)
    except ValueError:
        raise ParameterError("KOFF2D_DEFAULT_TOL must be a float, got %r" % raw)


def _make_cfg(tol):
    rel = tol if tol is not None else _default_rel_tol()
    return QuadratureConfig(rel_tol=rel)


def _gather_params(args, parser):
    """Either a PhysicalParams or DimensionlessParams from the flags."""
    phys = [args.ka, args.kd, args.D, args.a]
    dimless = [args.h_tilde, args.kappa_tilde]
    have_phys = any(v is not None for v in phys)
    have_dim = any(v is not None for v in dimless)
    if have_phys and have_dim:
        parser.error("give either --ka/--kd/--D/--a or --h-tilde/--kappa-tilde, not both")
    if have_phys:
        missing = [n for n, v in zip(("--ka", "--kd", "--D", "--a"), phys) if v is None]
        if missing:
            parser.error("missing physical flags: %s" % ", ".join(missing))
        return PhysicalParams(args.ka, args.kd, args.D, args.a)
    missing = [n for n, v in zip(("--h-tilde", "--kappa-tilde"), dimless) if v is None]
    if missing:
        parser.error("missing flags: %s (or give the physical set --ka/--kd/--D/--a)"
                     % ", ".join(missing))
    return DimensionlessParams(args.h_tilde, args.kappa_tilde)


def _run_route(params, route, cfg):
    """One RouteResult record (dict) for dimensionless or physical input."""
    t0 = time.perf_counter()
    if isinstance(params, PhysicalParams):
        if route == "stieltjes" and params.kappa_a != 0.0:
            from .model import physical_scale_factor
            r = offrate.finite_part_stieltjes(nondimensionalize(params), CLI_X_SEQUENCE, cfg)
            c = physical_scale_factor(params)
            r = offrate.RouteResult(r.route, c * r.value, c * r.error_estimate, r.diagnostics)
        else:
            r = offrate.koff_inverse(params, route, cfg)
        dim = nondimensionalize(params)
        echo = {"ka": params.kappa_a, "kd": params.kappa_d, "D": params.D, "a": params.a,
                "h_tilde": dim.h_tilde, "kappa_tilde": dim.kappa_D_tilde}
    else:
        if route == "stieltjes":
            r = offrate.finite_part_stieltjes(params, CLI_X_SEQUENCE, cfg)
        else:
            r = offrate.finite_part_route(params, route, cfg)
        echo = {"ka": None, "kd": None, "D": None, "a": None,
                "h_tilde": params.h_tilde, "kappa_tilde": params.kappa_D_tilde}
    wall = time.perf_counter() - t0
    rec = dict(echo)
    rec.update(route=r.route, value=r.value, error_estimate=r.error_estimate,
               converged=bool(r.diagnostics.get("converged", True)), wall_time=wall)
    return rec


def _emit_compute(records, fmt, out):
    if fmt == "csv":
        w = csv.writer(out)
        w.writerow(COMPUTE_CSV_FIELDS)
        for r in records:
            w.writerow([_fmt17(r[k]) for k in COMPUTE_CSV_FIELDS])
    elif fmt == "json":
        json.dump(records, out, indent=2)
        out.write("\n")
    else:
        hdr = "%-26s %-16s %-12s %-9s %s" % ("route", "value", "error_est", "converged",
                                             "wall_time")
        out.write(hdr + "\n")
        for r in records:
            out.write("%-26s %-16s %-12s %-9s %s\n"
                      % (r["route"], _fmt10(r["value"]), "%.3g" % r["error_estimate"],
                         r["converged"], "%.4f" % r["wall_time"]))


def cmd_compute(args, parser) -> int:
    try:
        params = _gather_params(args, parser)
        cfg = _make_cfg(args.tol)
    except (ParameterError, DomainError) as exc:
        parser.error(str(exc))
    routes = ["closed", "quadrature", "stieltjes"] if args.route == "all" else [args.route]
    records = [_run_route(params, rt, cfg) for rt in routes]
    _emit_compute(records, args.format, sys.stdout)
    if any(not r["converged"] for r in records):
        return 3
    if args.route == "all":
        ref = records[0]["value"]
        tol_by_route = {offrate.ROUTE_QUADRATURE: offrate.QUADRATURE_ROUTE_RTOL,
                        offrate.ROUTE_STIELTJES: offrate.STIELTJES_ROUTE_RTOL}
        for r in records[1:]:
            tol = tol_by_route[r["route"]]
            if abs(r["value"] - ref) > tol * abs(ref) + 1e-300:
                sys.stderr.write("route disagreement: %s deviates %.3g (tol %.1g)\n"
                                 % (r["route"], abs(r["value"] - ref) / abs(ref), tol))
                return 2
    return 0


def cmd_verify(args, parser) -> int:
    probes = None
    if args.probes:
        try:
            probes = tuple(float(tok) for tok in args.probes.split(",") if tok.strip())
        except ValueError:
            parser.error("--probes must be comma-separated floats, got %r" % args.probes)
    # keep quadrature noise (relative and absolute) below the pass tolerance
    rel = min(_default_rel_tol(), (args.tol * 1e-2) if args.tol else 1.0)
    abs_floor = max(args.tol * 1e-6, 5e-308) if args.tol else 1e-14
    try:
        cfg = QuadratureConfig(rel_tol=max(rel, 1e-14), abs_tol=abs_floor)
        params = DimensionlessParams(args.h_tilde, args.kappa_tilde)
    except ParameterError as exc:
        parser.error(str(exc))

    names = (["double-laplace", "ismail", "master"] if args.identity == "all"
             else [args.identity])
    reports = []
    for name in names:
        if name == "double-laplace":
            reports.append(identities.verify_double_laplace(
                probes or identities.DOUBLE_LAPLACE_PROBES, cfg,
                args.tol or identities.DOUBLE_LAPLACE_TOL))
        elif name == "ismail":
            for nu in (-1, 0):
                reports.append(identities.verify_ismail(
                    nu, probes or identities.ISMAIL_PROBES, cfg,
                    args.tol or identities.ISMAIL_TOL))
        else:
            reports.append(identities.verify_master(
                params, probes or identities.MASTER_PROBES, cfg,
                args.tol or identities.MASTER_TOL))
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print("%-18s %s  max_rel_residual=%.3e  tol=%.1e  probes=%s"
              % (r.identity_name, status, r.max_rel_residual, r.tolerance,
                 ",".join("%g" % p for p in r.probe_points)))
    return 0 if all(r.passed for r in reports) else 2


_SWEEP_PHYSICAL = {"D": "D", "ka": "kappa_a", "kd": "kappa_d", "a": "a"}


def _sweep_grid(args, parser):
    if args.points < 1:
        parser.error("--points must be >= 1, got %d" % args.points)
    if not (math.isfinite(args.lo) and math.isfinite(args.hi)):
        parser.error("--from/--to must be finite")
    if args.points == 1:
        return [args.lo]
    if args.log:
        if args.lo <= 0 or args.hi <= 0:
            parser.error("--log needs positive --from/--to")
        r = (args.hi / args.lo) ** (1.0 / (args.points - 1))
        return [args.lo * r ** i for i in range(args.points)]
    step = (args.hi - args.lo) / (args.points - 1)
    return [args.lo + step * i for i in range(args.points)]


def cmd_sweep(args, parser) -> int:
    grid = _sweep_grid(args, parser)
    cfg = _make_cfg(args.tol)
    fixed = {"ka": args.ka, "kd": args.kd, "D": args.D, "a": args.a,
             "h_tilde": args.h_tilde, "kappa_tilde": args.kappa_tilde}

    def params_at(v):
        if args.param in ("h-tilde", "kappa-tilde"):
            if any(fixed[k] is not None for k in ("ka", "kd", "D", "a")):
                parser.error("dimensionless sweep cannot mix with physical flags")
            h = v if args.param == "h-tilde" else fixed["h_tilde"]
            kap = v if args.param == "kappa-tilde" else fixed["kappa_tilde"]
            if h is None or kap is None:
                parser.error("fix the non-swept dimensionless parameter "
                             "(--h-tilde or --kappa-tilde)")
            return DimensionlessParams(h, kap)
        if fixed["h_tilde"] is not None or fixed["kappa_tilde"] is not None:
            parser.error("physical sweep cannot mix with dimensionless flags")
        vals = {"kappa_a": fixed["ka"], "kappa_d": fixed["kd"], "D": fixed["D"],
                "a": fixed["a"]}
        vals[_SWEEP_PHYSICAL[args.param]] = v
        missing = [k for k, val in vals.items() if val is None]
        if missing:
            parser.error("physical sweep over --%s needs the other three "
                         "physical flags (missing: %s)" % (args.param, ", ".join(missing)))
        return PhysicalParams(**vals)

    try:
        point_params = [params_at(v) for v in grid]
    except (ParameterError, DomainError) as exc:
        parser.error(str(exc))
    routes = ["closed", "quadrature", "stieltjes"] if args.route == "all" else [args.route]

    def rows_for(pv):
        v, params = pv
        out = []
        for rt in routes:
            rec = _run_route(params, rt, cfg)
            out.append([args.param, v, rec["h_tilde"], rec["kappa_tilde"], rec["route"],
                        rec["value"], rec["error_estimate"], rec["converged"]])
        return out

    with ThreadPoolExecutor(max_workers=min(8, len(grid) or 1)) as pool:
        buffered = list(pool.map(rows_for, zip(grid, point_params)))

    w = csv.writer(sys.stdout)
    w.writerow(SWEEP_CSV_FIELDS)
    for rows in buffered:
        for row in rows:
            w.writerow([_fmt17(v) for v in row])
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return cmd_compute(args, parser)
        if args.command == "verify":
            return cmd_verify(args, parser)
        return cmd_sweep(args, parser)
    except (ParameterError, DomainError) as exc:
        sys.stderr.write("koff2d: error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
