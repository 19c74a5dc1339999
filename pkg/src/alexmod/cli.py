"""Command-line front-end.

Every subcommand prints one JSON document on stdout.  Exit status is 0 on
success, 1 when a verification check fails and 2 on bad input; errors are
reported as JSON on stderr.
"""
from __future__ import annotations

import argparse
import inspect
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bodies import Ellipsoid, body_from_spec
from .errors import AlexmodError, InputError
from .io import atomic_write, dumps, load_json, read_curve_csv, write_curve
from .ma import ConeFunction, Holder, SampledFunction, equality_case_check, midpoint_violation, sample_interior, seminorm
from .modulus import DEFAULT_QUAD_TOL, OmegaOptions, f_omega, omega, omega_curve, t2_bounds
from .oracles import ORACLES, unit_ball_volume
from .polytope import Polytope, hull_volume
from .verify import SUITES, run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _add_common(p: argparse.ArgumentParser, body: bool = True, point: bool = False) -> None:
    p.add_argument("--seed", type=int, default=0, help="RNG seed (echoed in every output)")
    p.add_argument("--tol", type=float, default=DEFAULT_QUAD_TOL, help="quadrature tolerance")
    p.add_argument("--output-dir", type=Path, default=None, help="directory for written artifacts")
    if body:
        p.add_argument("--body", required=True, help="body-spec JSON file")
    if point:
        p.add_argument("--point", type=float, nargs="+", required=True, help="coordinates of the base point")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="alexmod", description="Sharp modulus of continuity for convex domains.")
    ap.add_argument("--version", action="version", version=f"alexmod {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("polar", help="polar body (Omega - a)° and its volume")
    _add_common(p, point=True)
    p = sub.add_parser("volume", help="volume of the body")
    _add_common(p)
    p.add_argument("--samples", type=int, default=200_000, help="Monte Carlo samples for curved bodies")
    p = sub.add_parser("f", help="f(a) = |(Omega - a)°|")
    _add_common(p, point=True)

    p = sub.add_parser("omega", help="omega(delta) with sandwich bounds")
    _add_common(p)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--boundary-samples", type=int, default=64)

    p = sub.add_parser("sweep", help="omega curve on a grid, written as CSV and JSON")
    _add_common(p, body=False)
    p.add_argument("--body", help="body-spec JSON file")
    p.add_argument("--config", help="sweep-config JSON file (overrides nothing given on the command line)")
    p.add_argument("--min", type=float, dest="dmin")
    p.add_argument("--max", type=float, dest="dmax")
    p.add_argument("--points", type=int)
    p.add_argument("--spacing", choices=("log", "linear"))
    p.add_argument("--boundary-samples", type=int)
    p.add_argument("--csv", default=None, help="CSV file name (default curve.csv)")
    p.add_argument("--json", default=None, help="JSON file name (default curve.json)")
    p.add_argument("--no-bounds", action="store_true", help="skip the sandwich bounds")
    p.add_argument("--tail-report", action="store_true",
                   help="exploratory: compare the sup of omega*delta^-(n+1)/(2n) with its small-delta tail")

    p = sub.add_parser("oracle", help="closed-form reference values")
    p.add_argument("name", choices=sorted(ORACLES))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--kappa", type=float)
    p.add_argument("--kappa0", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--semi-axes", type=float, nargs="+", dest="semi_axes")
    p.add_argument("--exponents", type=float, nargs="+")
    p.add_argument("--y", type=float, nargs="+")

    ma = sub.add_parser("ma", help="cone functions and seminorm checks")
    ms = ma.add_subparsers(dest="ma_command", required=True, parser_class=_Parser)
    p = ms.add_parser("cone-check", help="convexity and boundary values of u_a")
    _add_common(p, point=True)
    p.add_argument("--pairs", type=int, default=10_000)
    p = ms.add_parser("equality", help="extremal pair against f(a)")
    _add_common(p, point=True)
    p = ms.add_parser("seminorm", help="sampled modulus seminorm of u_a")
    _add_common(p, point=True)
    p.add_argument("--pairs", type=int, default=1000)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--curve", help="omega curve CSV from `sweep`")
    g.add_argument("--holder", type=float, help="Hoelder exponent alpha")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output-dir", type=Path, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--n", type=int, choices=(2, 3, 4), default=None)
    p.add_argument("--p", type=float, default=None)
    return ap


def _body(args):
    spec = load_json(args.body)
    return body_from_spec(spec), spec


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


def _out(args, name: str) -> Path:
    return (args.output_dir or Path(".")) / name


def _cmd_polar(args) -> int:
    body, _ = _body(args)
    pb = f_omega(body, args.point, tol=args.tol, seed=args.seed)
    out = {"point": pb.base, "volume": pb.volume, "method": pb.method, "quad_err": pb.error, "seed": args.seed}
    if pb.polytope is not None:
        out["vertices"] = pb.polytope.vertices
        out["normals"] = pb.polytope.A
        out["offsets"] = pb.polytope.b
    _emit(out)
    return 0


def body_volume(body, samples: int, seed: int) -> dict:
    if isinstance(body, Polytope):
        return {"volume": hull_volume(body), "method": "exact", "error": 0.0}
    if isinstance(body, Ellipsoid):
        return {"volume": unit_ball_volume(body.dim) * float(np.prod(body.semi_axes)), "method": "closed_form",
                "error": 0.0}
    rng = np.random.default_rng([seed, 1])
    c, _ = body.chebyshev_center()
    R = body.bounding_radius()
    g = rng.standard_normal((samples, body.dim))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    pts = c + R * g * rng.random((samples, 1)) ** (1.0 / body.dim)
    frac = float(np.mean(body.contains(pts)))
    ball = unit_ball_volume(body.dim) * R**body.dim
    return {"volume": frac * ball, "method": "monte_carlo", "error": ball * math.sqrt(frac * (1 - frac) / samples)}


def _cmd_volume(args) -> int:
    body, _ = _body(args)
    _emit({**body_volume(body, args.samples, args.seed), "seed": args.seed})
    return 0


def _cmd_f(args) -> int:
    body, _ = _body(args)
    pb = f_omega(body, args.point, tol=args.tol, seed=args.seed)
    _emit({"f": pb.volume, "method": pb.method, "quad_err": pb.error, "seed": args.seed})
    return 0


def _cmd_omega(args) -> int:
    body, _ = _body(args)
    opts = OmegaOptions(boundary_samples=args.boundary_samples, seed=args.seed, tol=args.tol)
    sb = t2_bounds(body, args.delta, opts)
    res = omega(body, args.delta, opts)
    _emit({"delta": args.delta, "omega": res.value, "argmax": res.argmax, "lower_bound": sb.lo,
           "upper_bound": sb.hi, "samples_used": res.samples_used, "sampling_tol": res.sampling_tol,
           "quad_err": res.quad_err, "seed": args.seed})
    return 0


def _sweep_settings(args) -> dict:
    cfg = load_json(args.config) if args.config else {}
    grid = cfg.get("delta_grid", {})
    opts = cfg.get("opts", {})
    outputs = cfg.get("outputs", {})
    body = cfg.get("body")
    if args.body:
        body = load_json(args.body)
    if body is None:
        raise InputError("sweep needs --body or a config with a body")
    s = {
        "body": body,
        "min": args.dmin if args.dmin is not None else grid.get("min"),
        "max": args.dmax if args.dmax is not None else grid.get("max"),
        "points": args.points if args.points is not None else grid.get("points", 20),
        "spacing": args.spacing or grid.get("spacing", "log"),
        "boundary_samples": args.boundary_samples or opts.get("boundary_samples", 64),
        "seed": args.seed if args.seed != 0 or "seed" not in opts else opts["seed"],
        "tol": args.tol if args.tol != DEFAULT_QUAD_TOL or "tol" not in opts else opts["tol"],
        "csv": args.csv or outputs.get("csv_path", "curve.csv"),
        "json": args.json or outputs.get("json_path", "curve.json"),
    }
    if s["min"] is None or s["max"] is None:
        raise InputError("sweep needs --min and --max")
    if not 0 < s["min"] < s["max"]:
        raise InputError("grid needs 0 < min < max")
    if int(s["points"]) < 2:
        raise InputError("grid needs at least 2 points")
    if s["spacing"] not in ("log", "linear"):
        raise InputError("spacing must be 'log' or 'linear'")
    return s


def tail_report(curve) -> dict:
    """Exploratory comparison of the grid sup of omega*delta^-alpha with its small-delta tail."""
    n = curve.dim
    alpha = (n + 1) / (2 * n)
    ratio = curve.omega * curve.deltas ** (-alpha)
    k = max(1, min(3, len(ratio) // 4))
    return {"exponent": alpha, "sup_ratio": float(ratio.max()), "tail_ratio": float(np.mean(ratio[:k])),
            "tail_points": k, "note": "exploratory estimate; equality is not asserted"}


def _cmd_sweep(args) -> int:
    s = _sweep_settings(args)
    body = body_from_spec(s["body"])
    points = int(s["points"])
    if s["spacing"] == "log":
        deltas = np.logspace(math.log10(s["min"]), math.log10(s["max"]), points)
    else:
        deltas = np.linspace(s["min"], s["max"], points)
    opts = OmegaOptions(boundary_samples=int(s["boundary_samples"]), seed=int(s["seed"]), tol=float(s["tol"]))
    curve = omega_curve(body, deltas, opts, bounds=not args.no_bounds)
    for w in curve.warnings:
        sys.stderr.write(json.dumps({"warning": w}) + "\n")
    csv_path = _out(args, s["csv"])
    json_path = _out(args, s["json"])
    write_curve(curve, csv_path, json_path, s["body"])
    out = {"csv": str(csv_path), "json": str(json_path), "points": points, "seed": curve.seed,
           "omega_max": float(curve.omega.max()), "warnings": curve.warnings}
    if args.tail_report:
        out["tail_report"] = tail_report(curve)
    _emit(out)
    return 0


def _cmd_oracle(args) -> int:
    fn, formula_id = ORACLES[args.name]
    kwargs = {}
    for name in inspect.signature(fn).parameters:
        value = getattr(args, name, None)
        if value is None:
            raise InputError(f"oracle {args.name} needs --{name.replace('_', '-')}")
        kwargs[name] = value
    _emit({"value": fn(**kwargs), "formula_id": formula_id})
    return 0


def _cmd_ma(args) -> int:
    body, _ = _body(args)
    cone = ConeFunction(body, args.point)
    u = SampledFunction.from_cone(cone)
    if args.ma_command == "cone-check":
        rng = np.random.default_rng([args.seed, 2])
        pts = sample_interior(body, 2 * args.pairs, rng)
        viol = midpoint_violation(u, pts[: args.pairs], pts[args.pairs:])
        _, nearest = body.nearest_boundary_points(cone.apex)
        boundary = float(np.max(np.abs(u(nearest))))
        ok = viol <= 1e-9 and boundary <= 1e-9
        _emit({"midpoint_violation": viol, "boundary_value": boundary, "apex_value": float(u(cone.apex)[0]),
               "pairs": args.pairs, "pass": ok, "seed": args.seed})
        return 0 if ok else 1
    if args.ma_command == "equality":
        eq = equality_case_check(body, cone.apex, tol=args.tol)
        _emit({"lhs": eq.lhs, "rhs": eq.rhs, "ratio": eq.ratio, "boundary_point": eq.boundary_point, "f": eq.f})
        return 0
    modulus = Holder(args.holder) if args.holder is not None else read_curve_csv(args.curve)
    if not isinstance(modulus, Holder):
        modulus.inradius = body.chebyshev_center()[1]
    value = seminorm(u, modulus, pairs=args.pairs, seed=args.seed)
    f = f_omega(body, cone.apex, tol=args.tol).volume
    _emit({"seminorm": value, "image_volume_root": f ** (1.0 / body.dim), "pairs": args.pairs, "seed": args.seed})
    return 0


def _report_path(args, suite: str) -> Path:
    base = _out(args, f"verify_{suite}.json")
    k = 1
    path = base
    while path.exists():
        path = base.with_name(f"verify_{suite}.{k}.json")
        k += 1
    return path


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, trials=args.trials, n=args.n, p=args.p)
    data = report.to_dict()
    data.pop("runtime_s")
    data["environment"].pop("platform", None)
    path = _report_path(args, args.suite)
    atomic_write(path, dumps(data))
    for c in report.checks:
        sys.stderr.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}\n")
    _emit({"suite": args.suite, "passed": report.passed, "checks": len(report.checks),
           "failed": sum(not c.passed for c in report.checks), "report": str(path), "seed": args.seed})
    return 0 if report.passed else 1


COMMANDS = {"polar": _cmd_polar, "volume": _cmd_volume, "f": _cmd_f, "omega": _cmd_omega, "sweep": _cmd_sweep,
            "oracle": _cmd_oracle, "ma": _cmd_ma, "verify": _cmd_verify}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (AlexmodError, ValueError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


def main() -> None:
    sys.exit(run())
