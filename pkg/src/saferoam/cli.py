"""Command-line front door: trace generation, simulation, calibration, serving.

Thin argument plumbing only; all behavior lives in the library modules.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from saferoam.calibration import boxplot_fences, calibrate_threshold, load_speed_samples
from saferoam.gait import GaitKind, GaitParams, generate_gait
from saferoam.geometry import RoomModel
from saferoam.service import SessionEngine, ServiceConfig, serve_forever
from saferoam.sim import (
    load_sim_config,
    read_metrics_from_log,
    run_trace,
    write_frame_log,
)
from saferoam.tracking import load_trace, save_trace


def _parse_path(text: str) -> tuple[tuple[float, float], ...]:
    """Waypoints as 'x,z;x,z;...'."""
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"bad waypoint {chunk!r}, want 'x,z'")
        points.append((float(parts[0]), float(parts[1])))
    if not points:
        raise argparse.ArgumentTypeError("path must contain at least one waypoint")
    return tuple(points)


def _cmd_generate(args: argparse.Namespace) -> int:
    params = GaitParams(
        kind=GaitKind(args.kind),
        path=args.path or (),
        ground_speed=args.speed,
        step_rate=args.step_rate,
        knee_lift=args.knee_lift,
        noise_sigma=args.noise,
        frame_rate=args.rate,
        duration=args.duration,
        seed=args.seed,
        facing=args.facing,
    )
    frames = generate_gait(params)
    save_trace(frames, args.out)
    print(f"wrote {len(frames)} frames to {args.out}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    room = RoomModel.from_file(args.room)
    cfg = load_sim_config(room, args.config)
    trace = load_trace(args.trace)
    result = run_trace(cfg, trace)
    write_frame_log(args.out, cfg, result)
    print(json.dumps(result.metrics.to_dict(), indent=2))
    return 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    samples = load_speed_samples(args.speeds)
    fences = boxplot_fences(samples)
    v_t = calibrate_threshold(samples, rounding=args.rounding)
    print(json.dumps({"fences": fences.to_dict(), "v_t": v_t}, indent=2))
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    report = read_metrics_from_log(args.log)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    room = RoomModel.from_file(args.room)
    sim = load_sim_config(room, args.config)
    engine = SessionEngine(room, sim, ServiceConfig(tick=sim.tick))
    print(f"serving {args.transport} on {args.host}:{args.port}")
    serve_forever(engine, args.host, args.port, transport=args.transport)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="saferoam",
        description="Locomotion classification and room-safety warnings "
        "over skeleton traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="synthesize a skeleton trace")
    gen.add_argument("--kind", required=True, choices=[k.value for k in GaitKind])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--duration", type=float, default=10.0, help="seconds")
    gen.add_argument("--speed", type=float, default=1.2, help="m/s along the path")
    gen.add_argument("--step-rate", type=float, default=2.0, help="steps/s")
    gen.add_argument("--knee-lift", type=float, default=0.25, help="m")
    gen.add_argument("--noise", type=float, default=0.0, help="sigma, m")
    gen.add_argument("--rate", type=float, default=30.0, help="frames/s")
    gen.add_argument("--facing", type=float, default=0.0, help="initial yaw, rad")
    gen.add_argument(
        "--path", type=_parse_path, default=None, help="waypoints 'x,z;x,z;...'"
    )
    gen.set_defaults(func=_cmd_generate)

    sim = sub.add_parser("simulate", help="replay a trace against a room")
    sim.add_argument("--room", required=True)
    sim.add_argument("--trace", required=True)
    sim.add_argument("--config", default=None)
    sim.add_argument("--out", required=True, help="frame log path")
    sim.set_defaults(func=_cmd_simulate)

    cal = sub.add_parser("calibrate", help="derive the walking-speed threshold")
    cal.add_argument("--speeds", required=True, help="CSV, one m/s value per line")
    cal.add_argument("--rounding", type=float, default=0.05)
    cal.set_defaults(func=_cmd_calibrate)

    met = sub.add_parser("metrics", help="print the metrics from a frame log")
    met.add_argument("--log", required=True)
    met.set_defaults(func=_cmd_metrics)

    srv = sub.add_parser("serve", help="host live steering sessions")
    srv.add_argument("--room", required=True)
    srv.add_argument("--port", type=int, required=True)
    srv.add_argument("--config", default=None)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument(
        "--transport", choices=["websocket", "tcp"], default="websocket"
    )
    srv.set_defaults(func=_cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
