"""Command-line interface: generate, evolve, check, bounds.

Exit codes: 0 success (check: a verdict exists), 1 check found no verdict,
2 invalid input or configuration, 3 file I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analytic, curve_io, flow, monitor, soliton
from .errors import CurveDiffusionError, TooFewSnapshots


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvediffusion",
        description="Simulate curve diffusion flow of plane curves, generate "
        "exact soliton curves, classify solitons, and evaluate lifespan bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample an analytic curve to CSV")
    gen.add_argument("--kind", required=True,
                     choices=["circle", "lemniscate", "fresnel", "line"])
    gen.add_argument("--nodes", type=int, default=256)
    gen.add_argument("--out", required=True)
    gen.add_argument("--orientation", type=int, choices=[1, -1], default=1)
    gen.add_argument("--radius", type=float, default=1.0, help="circle radius")
    gen.add_argument("--center", type=float, nargs=2, default=[0.0, 0.0],
                     metavar=("X", "Y"))
    gen.add_argument("--scale", type=float, default=1.0, help="lemniscate scale")
    gen.add_argument("--c1", type=float, default=0.0, help="fresnel kappa intercept")
    gen.add_argument("--c2", type=float, default=0.0, help="fresnel half slope")
    gen.add_argument("--theta", type=float, default=0.0, help="fresnel rotation")
    gen.add_argument("--v", type=float, nargs=2, default=[0.0, 0.0],
                     metavar=("X", "Y"), help="fresnel translation")
    gen.add_argument("--smin", type=float, default=0.0)
    gen.add_argument("--smax", type=float, default=1.0)
    gen.add_argument("--point", type=float, nargs=2, default=[0.0, 0.0],
                     metavar=("X", "Y"), help="line base point")
    gen.add_argument("--direction", type=float, nargs=2, default=[1.0, 0.0],
                     metavar=("X", "Y"), help="line direction")

    evo = sub.add_parser("evolve", help="run a flow described by a JSON config")
    evo.add_argument("config", help="path to the run configuration JSON")

    chk = sub.add_parser("check", help="classify a curve file as a soliton")
    chk.add_argument("curve", help="path to a curve CSV")
    chk.add_argument("--tol", type=float, default=soliton.DEFAULT_TOL)
    chk.add_argument("--json", dest="json_out", default=None,
                     help="also write the report to this path")

    bnd = sub.add_parser("bounds", help="lifespan bounds for an initial length")
    bnd.add_argument("L0", type=float)
    bnd.add_argument("--json", dest="json_out", default=None,
                     help="also write the bounds to this path")
    return parser


def _spec_from_args(args: argparse.Namespace) -> analytic.AnalyticCurveSpec:
    if args.kind == "circle":
        return analytic.Circle(radius=args.radius, center=tuple(args.center),
                               orientation=args.orientation)
    if args.kind == "lemniscate":
        return analytic.Lemniscate(scale=args.scale, orientation=args.orientation)
    if args.kind == "fresnel":
        return analytic.FresnelFamily(c1=args.c1, c2=args.c2, theta=args.theta,
                                      v=tuple(args.v), s_min=args.smin,
                                      s_max=args.smax, orientation=args.orientation)
    return analytic.Line(point=tuple(args.point), direction=tuple(args.direction),
                         s_min=args.smin, s_max=args.smax,
                         orientation=args.orientation)


def _cmd_generate(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    curve = analytic.sample_analytic(spec, args.nodes)
    curve_io.write_curve_csv(curve, args.out)
    return 0


def _parse_flow_config(data: dict) -> flow.FlowSpec:
    if not isinstance(data, dict):
        raise ValueError("'flow' must be a JSON object")
    dt = data.get("dt")
    if dt in (None, "auto"):
        dt = None
    else:
        dt = float(dt)
    spec = flow.FlowSpec(
        kind=data.get("kind", flow.CURVE_DIFFUSION),
        scheme=data.get("scheme", flow.SEMI_IMPLICIT),
        dt=dt,
        t_end=float(data.get("t_end", 1.0)),
        redistribute_every=int(data.get("redistribute_every", 10)),
        snapshot_every=int(data.get("snapshot_every", 10)),
        length_min=None if data.get("length_min") is None
        else float(data["length_min"]),
        min_spacing=None if data.get("min_spacing") is None
        else float(data["min_spacing"]),
    )
    spec.validate()
    return spec


def _load_input_curve(data: dict):
    if not isinstance(data, dict):
        raise ValueError("'input' must be a JSON object")
    has_path = "path" in data
    has_spec = "spec" in data
    if has_path == has_spec:
        raise ValueError("'input' needs exactly one of 'path' or 'spec'")
    if has_path:
        return curve_io.read_curve_csv(data["path"])
    spec = analytic.spec_from_dict(data["spec"])
    nodes = int(data.get("nodes", 256))
    return analytic.sample_analytic(spec, nodes)


def _cmd_evolve(args: argparse.Namespace) -> int:
    try:
        config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ValueError("config must be a JSON object")
    for key in ("input", "flow", "out_dir"):
        if key not in config:
            raise ValueError(f"config is missing the {key!r} field")

    curve = _load_input_curve(config["input"])
    spec = _parse_flow_config(config["flow"])
    traj = flow.evolve(curve, spec)

    scale_fit = None
    if config.get("fit_scale", True):
        try:
            scale_fit = flow.fit_scale_profile(traj)
        except TooFewSnapshots:
            scale_fit = None
    curve_io.write_run_directory(
        config["out_dir"], config, traj, scale_fit=scale_fit,
        emit_svg=bool(config.get("emit_svg", False)),
    )
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    curve = curve_io.read_curve_csv(args.curve)
    report = soliton.classify(curve, tol=args.tol)
    payload = soliton.report_to_dict(report)
    text = json.dumps(payload, indent=2)
    print(text)
    if args.json_out:
        Path(args.json_out).write_text(text + "\n", encoding="utf-8", newline="\n")
    return 0 if report.verdict is not None else 1


def _cmd_bounds(args: argparse.Namespace) -> int:
    bounds = monitor.time_bounds(args.L0)
    text = json.dumps(bounds.to_dict(), indent=2)
    print(text)
    if args.json_out:
        Path(args.json_out).write_text(text + "\n", encoding="utf-8", newline="\n")
    return 0


_HANDLERS = {
    "generate": _cmd_generate,
    "evolve": _cmd_evolve,
    "check": _cmd_check,
    "bounds": _cmd_bounds,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, CurveDiffusionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
