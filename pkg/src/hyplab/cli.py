"""Command-line front end.

Subcommands:
  constants   sharp constant, remainder constant (all cases), brute-force
              cross-check
  weights     sample the radial weights W, H_p, h and the bounded weight V
              along a geodesic ray
  rp          critical radii r0 and r_p for one (N, p)
  rp-scan     monotonicity tables of r_p in N or p
  verify      seeded batch of inequality reports for one kind
  sharpness   quotient schedules of the near-extremal families
  figure1     curve samples of H_p with the crossing-radius marker row
  proofcheck  scalar proof-step checks (quadratic bound, convexity bound,
              positivity profile, supersolution residuals)

Exit code 0 when every check passes, 1 on a verification failure, 2 on
hypothesis violations or invalid parameter combinations.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .constants import brute_force_cnp, c_2p, c_2p_direct, c_np, check_ni
from .core import (
    HalfSpacePoint,
    HypothesisError,
    Params,
    green_weight_for,
    h_func,
    weight_hp,
    weight_v,
)
from .quadrature import QuadratureError
from .report import ReportEnvelope, emit
from .rp import rp_scan_N, rp_scan_p, solve_r0, solve_rp
from .verify import (
    InequalityKind,
    SupportViolation,
    batch_verify,
    check_ftilde,
    check_pconvexity,
    halfspace_pair_reports,
    sharpness_scan,
    supersolution_residual,
)

KIND_TAGS = [k.value for k in InequalityKind]


def _add_common(sp, with_seed=False, with_trials=False):
    sp.add_argument("--N", type=int, required=True, help="dimension, integer >= 2")
    sp.add_argument("--p", type=float, required=True, help="exponent, real > 1")
    sp.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", default="-", help="output path or - for stdout")
    if with_seed:
        sp.add_argument("--seed", type=int, default=0, help="64-bit batch seed")
    if with_trials:
        sp.add_argument("--trials", type=int, default=25)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyplab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("constants", help="constant table for one (N, p)")
    _add_common(sp)

    sp = sub.add_parser("weights", help="sample W, H_p, h, V over a radial grid")
    _add_common(sp)
    sp.add_argument("--r-min", type=float, default=0.05)
    sp.add_argument("--r-max", type=float, default=10.0)
    sp.add_argument("--points", type=int, default=40)

    sp = sub.add_parser("rp", help="critical radii r0 and r_p")
    _add_common(sp)

    sp = sub.add_parser("rp-scan", help="monotonicity scan of r_p")
    _add_common(sp)
    sp.add_argument("--scan-axis", choices=("N", "p"), required=True)
    sp.add_argument("--N-max", type=int, default=40)
    sp.add_argument(
        "--p-values", type=float, nargs="+", default=None,
        help="increasing p values for the p-scan",
    )

    sp = sub.add_parser("verify", help="seeded batch of inequality reports")
    _add_common(sp, with_seed=True, with_trials=True)
    sp.add_argument(
        "--kind", choices=KIND_TAGS, required=True,
        help=f"inequality tag, one of: {', '.join(KIND_TAGS)}",
    )
    sp.add_argument("--l", type=float, default=None, help="1D Hardy mixed exponent")
    sp.add_argument(
        "--allow-origin", action="store_true",
        help="allow supports touching r = 0 (origin-integrable weights only)",
    )
    sp.add_argument("--workers", type=int, default=None)

    sp = sub.add_parser("sharpness", help="near-extremal quotient schedules")
    _add_common(sp)
    sp.add_argument("--kind", choices=("pgap", "hardy1d"), required=True)
    sp.add_argument("--schedule", type=float, nargs="+", default=[1e-1, 1e-2, 1e-3])
    sp.add_argument("--delta", type=float, default=1e-3, help="hardy1d delta")
    sp.add_argument("--l", type=float, default=None)

    sp = sub.add_parser("figure1", help="H_p curve with r_p marker row")
    _add_common(sp)
    sp.add_argument("--r-max", type=float, default=15.0)
    sp.add_argument("--points", type=int, default=1500)

    sp = sub.add_parser("proofcheck", help="scalar proof-step checks")
    _add_common(sp, with_seed=True, with_trials=True)
    return ap


def _echo(args, **extra) -> dict:
    d = {"N": args.N, "p": args.p, "tol": args.tol}
    d.update(extra)
    return d


def _write(env: ReportEnvelope, args) -> None:
    if args.output == "-":
        emit(env, args.format, sys.stdout)
    else:
        emit(env, args.format, args.output)


def cmd_constants(args) -> int:
    params = Params(args.N, args.p)
    rows = [
        {"name": "lambda_p", "value": params.lambda_p, "kind": "exact",
         "case_label": "", "optimizer_arg": ""},
    ]
    cr = c_np(params)
    rows.append(
        {"name": "C_np", "value": cr.value, "kind": cr.kind,
         "case_label": cr.case_label,
         "optimizer_arg": cr.optimizer_arg if cr.optimizer_arg is not None else ""}
    )
    bf = brute_force_cnp(params)
    rows.append({"name": "brute_force_cnp", "value": bf, "kind": "numeric",
                 "case_label": "", "optimizer_arg": ""})
    ok = True
    if params.p > 2.0:
        ok = abs(bf - cr.value) <= 1e-8
    else:
        ok = bf >= cr.value - 1e-8
    if params.N == 2 and 1.0 < params.p < 2.0:
        tab = c_2p(params.p)
        direct = c_2p_direct(params.p)
        rows.append({"name": "C_2p_tabulated", "value": tab.value, "kind": tab.kind,
                     "case_label": tab.case_label, "optimizer_arg": tab.optimizer_arg})
        rows.append({"name": "C_2p_direct", "value": direct.value, "kind": "exact",
                     "case_label": direct.case_label,
                     "optimizer_arg": direct.optimizer_arg})
    env = ReportEnvelope("constants", _echo(args), "constant_table", rows)
    _write(env, args)
    return 0 if ok else 1


def cmd_weights(args) -> int:
    params = Params(args.N, args.p)
    ev = green_weight_for(params)
    radii = np.geomspace(args.r_min, args.r_max, args.points)
    w_vals, w_errs = ev.w_array(radii)
    rows = []
    for r, w, werr in zip(radii, w_vals, w_errs):
        pt_x1 = float(np.tanh(r))
        pt_y = float(1.0 / np.cosh(r))
        rows.append(
            {
                "r": float(r),
                "W": float(w),
                "W_err": float(werr),
                "Hp": float(weight_hp(params, r)) if params.p >= 2.0 else float("nan"),
                "h": float(h_func(params, r)),
                "V_geodesic": weight_v(HalfSpacePoint(pt_x1, 0.0, pt_y)),
            }
        )
    if params.p < 2.0:
        for row in rows:
            row["Hp"] = ""
    env = ReportEnvelope("weights", _echo(args), "weight_samples", rows)
    _write(env, args)
    return 0


def cmd_rp(args) -> int:
    params = Params(args.N, args.p)
    rows = []
    if params.p > 2.0:
        r0 = solve_r0(params)
        rows.append({"name": "r0", "root": r0.root, "residual": r0.residual,
                     "iterations": r0.iterations, "bracket_lo": r0.bracket[0],
                     "bracket_hi": r0.bracket[1]})
    rp = solve_rp(params)
    if rp is None:
        rows.append({"name": "r_p", "root": float("inf"), "residual": 0.0,
                     "iterations": 0, "bracket_lo": 0.0, "bracket_hi": float("inf")})
    else:
        rows.append({"name": "r_p", "root": rp.root, "residual": rp.residual,
                     "iterations": rp.iterations, "bracket_lo": rp.bracket[0],
                     "bracket_hi": rp.bracket[1]})
    env = ReportEnvelope("rp", _echo(args), "root_table", rows)
    _write(env, args)
    return 0


def cmd_rp_scan(args) -> int:
    if args.scan_axis == "N":
        rows_in = rp_scan_N(args.p, args.N, args.N_max)
        rows = [
            {"axis": "N", "value": r["N"], "r_p": r["r_p"],
             "slope_formula": r["d_rp_dN"]}
            for r in rows_in
        ]
    else:
        p_values = args.p_values or [2.5, 3.0, 3.5, 4.0]
        rows_in = rp_scan_p(args.N, p_values)
        rows = [
            {"axis": "p", "value": r["p"], "r_p": r["r_p"],
             "slope_formula": r["d_rp_dp"]}
            for r in rows_in
        ]
    env = ReportEnvelope("rp-scan", _echo(args, scan_axis=args.scan_axis),
                         "scan_table", rows)
    _write(env, args)
    return 0


def cmd_verify(args) -> int:
    params = Params(args.N, args.p)
    kind = InequalityKind(args.kind)
    if kind in (InequalityKind.BOUNDED_V, InequalityKind.MAZYA):
        pairs = halfspace_pair_reports(params, args.trials, args.seed, args.tol)
        reports = [r_hyp if kind is InequalityKind.BOUNDED_V else r_maz for r_hyp, r_maz in pairs]
    else:
        reports = batch_verify(
            kind, [params], args.trials, args.seed, args.tol, l=args.l,
            workers=args.workers, allow_origin=args.allow_origin,
        )
    rows = [r.as_row() for r in reports]
    env = ReportEnvelope(
        "verify", _echo(args, kind=args.kind, trials=args.trials),
        "inequality_reports", rows, seed=args.seed,
    )
    _write(env, args)
    return 0 if all(r.passed for r in reports) else 1


def cmd_sharpness(args) -> int:
    params = Params(args.N, args.p)
    if args.kind == "pgap":
        rows_in = sharpness_scan(InequalityKind.PGAP, params, args.schedule, args.tol)
        rows = [
            {"eps": r["eps"], "delta": "", "quotient": r["quotient"],
             "quad_error": r["quad_error"], "lower": r["lower"], "upper": r["upper"]}
            for r in rows_in
        ]
        ok = all(
            r["lower"] - r["quad_error"]
            <= r["quotient"]
            <= r["upper"] + r["quad_error"]
            for r in rows_in
        )
    else:
        schedule = [(e, args.delta) for e in args.schedule]
        rows_in = sharpness_scan(
            InequalityKind.HARDY1D, params, schedule, args.tol, l=args.l
        )
        rows = [
            {"eps": r["eps"], "delta": r["delta"], "quotient": r["quotient"],
             "quad_error": r["quad_error"], "lower": r["lower"], "upper": r["upper"]}
            for r in rows_in
        ]
        ok = all(
            r["lower"] - r["quad_error"]
            <= r["quotient"]
            <= r["upper"] + r["quad_error"]
            for r in rows_in
        )
    env = ReportEnvelope("sharpness", _echo(args, kind=args.kind),
                         "sharpness_rows", rows)
    _write(env, args)
    return 0 if ok else 1


def cmd_figure1(args) -> int:
    params = Params(args.N, args.p)
    if params.p < 2.0:
        raise HypothesisError("figure1 needs p >= 2")
    rp = solve_rp(params)
    rp_val = float("inf") if rp is None else rp.root
    radii = list(np.linspace(args.r_max / args.points, args.r_max, args.points))
    if rp is not None and 0.0 < rp_val < args.r_max:
        radii.append(rp_val)  # marker row: the crossing H_p(r_p) = 1
    radii.sort()
    rows = []
    for r in radii:
        hp = float(weight_hp(params, r))
        rows.append({"r": float(r), "Hp": hp, "is_ge_one": bool(hp >= 1.0)})
    env = ReportEnvelope("figure1", _echo(args, r_p=rp_val), "figure1_curve", rows)
    _write(env, args)
    return 0


def cmd_proofcheck(args) -> int:
    params = Params(args.N, args.p)
    rng = np.random.default_rng(args.seed)
    rows = []
    ok = True

    n = max(10, args.trials)
    bs = rng.uniform(1e-3, 10.0, n)
    ss = rng.uniform(0.0, 1.0, n)
    ni_min = min(check_ni(float(b), float(s)) for b, s in zip(bs, ss))
    rows.append({"check": "quadratic_bound", "detail": f"{n} random (b, s)",
                 "value": ni_min, "threshold": -1e-14, "passed": ni_min >= -1e-14})

    ps = rng.uniform(1.0, 4.0, n)
    xis = rng.uniform(0.0, 2.0, n)
    etas = np.array([rng.uniform(-2.0, xi) for xi in xis])
    pc_min = min(
        check_pconvexity(float(pp), float(xi), float(eta))
        for pp, xi, eta in zip(ps, xis, etas)
    )
    rows.append({"check": "p_convexity", "detail": f"{n} random (p, xi, eta)",
                 "value": pc_min, "threshold": -1e-14, "passed": pc_min >= -1e-14})

    grid = np.geomspace(1e-4, 20.0, 400)
    ft = check_ftilde(params, grid)
    # nonnegativity is only claimed under the dimension hypothesis
    # (-1e-13 floor: boundary cases are identically zero up to rounding)
    rows.append({"check": "positivity_profile", "detail": "min over grid",
                 "value": ft, "threshold": -1e-13,
                 "passed": bool(ft >= -1e-13) if params.hardy_hypothesis else True})

    radii = rng.uniform(0.1, 10.0, 16)
    worst = 0.0
    for r in radii:
        ident, deriv = supersolution_residual(params, float(r), 1e-5)
        worst = max(worst, ident, deriv)
    rows.append({"check": "supersolution_residuals", "detail": "16 radii",
                 "value": worst, "threshold": 1e-6, "passed": worst < 1e-6})

    ok = all(r["passed"] for r in rows)
    env = ReportEnvelope("proofcheck", _echo(args), "proofcheck_rows", rows,
                         seed=args.seed)
    _write(env, args)
    return 0 if ok else 1


_COMMANDS = {
    "constants": cmd_constants,
    "weights": cmd_weights,
    "rp": cmd_rp,
    "rp-scan": cmd_rp_scan,
    "verify": cmd_verify,
    "sharpness": cmd_sharpness,
    "figure1": cmd_figure1,
    "proofcheck": cmd_proofcheck,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (HypothesisError, SupportViolation, ValueError) as exc:
        print(f"hyplab: parameter error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"hyplab: verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
