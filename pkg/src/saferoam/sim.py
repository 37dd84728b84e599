"""Deterministic trace-driven simulation and the evaluation metrics.

A run replays a skeleton trace through the person pipeline against one room,
logging a line-delimited JSON record per frame.  Metrics mirror a physical
evaluation: elapsed task time, boundary exits, and obstacle hits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from saferoam.geometry import Point2, RoomModel, distance_to_obstacle
from saferoam.locomotion import LocomotionConfig, LocomotionMode
from saferoam.pipeline import PersonPipeline, PipelineResult
from saferoam.tracking import SkeletonFrame
from saferoam.warning import WarningConfig, ZoneConfig

DEFAULT_COLLISION_RADIUS = 0.20  # m, body cylinder around the chest projection
DEFAULT_TICK = 1.0 / 30.0

# Fixed histogram key order keeps serialized logs byte-stable.
_MODE_KEYS = tuple(m.value for m in LocomotionMode)


@dataclass(frozen=True)
class SimConfig:
    """Everything a run needs besides the trace itself."""

    room: RoomModel
    locomotion: LocomotionConfig = LocomotionConfig()
    zones: ZoneConfig = ZoneConfig()
    fov_half_angle: Optional[float] = None  # None = warning-layer default
    collision_radius: float = DEFAULT_COLLISION_RADIUS
    tick: float = DEFAULT_TICK

    def __post_init__(self):
        if self.collision_radius <= 0:
            raise ValueError("collision_radius must be positive")
        if self.tick <= 0:
            raise ValueError("tick must be positive")

    @property
    def warning(self) -> WarningConfig:
        if self.fov_half_angle is None:
            return WarningConfig(zones=self.zones)
        return WarningConfig(zones=self.zones, fov_half_angle=self.fov_half_angle)

    def to_dict(self) -> dict:
        return {
            "locomotion": self.locomotion.to_dict(),
            "zones": self.zones.to_dict(),
            "fov_half_angle": self.warning.fov_half_angle,
            "collision_radius": self.collision_radius,
            "tick": self.tick,
        }


def load_sim_config(room: RoomModel, path: Union[str, Path, None] = None) -> SimConfig:
    """SimConfig for a room, with optional JSON overrides.

    The override file may carry any of: "locomotion" and "zones" objects,
    "fov_half_angle" (radians), "collision_radius", "tick".
    """
    if path is None:
        return SimConfig(room=room)
    with open(path) as fh:
        data = json.load(fh)
    known = {"locomotion", "zones", "fov_half_angle", "collision_radius", "tick"}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown sim config fields: {sorted(unknown)}")
    kwargs: dict = {"room": room}
    if "locomotion" in data:
        kwargs["locomotion"] = LocomotionConfig.from_dict(data["locomotion"])
    if "zones" in data:
        kwargs["zones"] = ZoneConfig.from_dict(data["zones"])
    for key in ("fov_half_angle", "collision_radius", "tick"):
        if key in data:
            kwargs[key] = float(data[key])
    return SimConfig(**kwargs)


@dataclass(frozen=True)
class MetricsReport:
    """Evaluation metrics for one run or an aggregate of runs."""

    task_time: float
    total_exits: int
    total_hits: int
    runs: int = 1
    runs_with_exit: int = 0
    runs_with_hit: int = 0
    mode_histogram: dict = field(default_factory=dict)

    def __post_init__(self):
        if min(self.task_time, self.total_exits, self.total_hits) < 0:
            raise ValueError("metrics must be non-negative")
        if self.runs_with_exit > min(self.runs, self.total_exits):
            raise ValueError("runs_with_exit cannot exceed runs or total_exits")
        if self.runs_with_hit > min(self.runs, self.total_hits):
            raise ValueError("runs_with_hit cannot exceed runs or total_hits")

    def to_dict(self) -> dict:
        return {
            "task_time": self.task_time,
            "total_exits": self.total_exits,
            "total_hits": self.total_hits,
            "runs": self.runs,
            "runs_with_exit": self.runs_with_exit,
            "runs_with_hit": self.runs_with_hit,
            "mode_histogram": {k: self.mode_histogram.get(k, 0) for k in _MODE_KEYS},
        }

    @classmethod
    def aggregate(cls, reports: Sequence["MetricsReport"]) -> "MetricsReport":
        """Combine per-run reports; times and counts add, run flags add."""
        histogram = {k: 0 for k in _MODE_KEYS}
        for r in reports:
            for k, v in r.mode_histogram.items():
                histogram[k] = histogram.get(k, 0) + v
        return cls(
            task_time=sum(r.task_time for r in reports),
            total_exits=sum(r.total_exits for r in reports),
            total_hits=sum(r.total_hits for r in reports),
            runs=sum(r.runs for r in reports),
            runs_with_exit=sum(r.runs_with_exit for r in reports),
            runs_with_hit=sum(r.runs_with_hit for r in reports),
            mode_histogram=histogram,
        )


class MetricsAccumulator:
    """Streaming metrics for one run.

    An exit is an inside-to-outside crossing of the chest's ground projection
    (re-entry arms the next one); a hit is the collision circle newly reaching
    an obstacle footprint (leaving re-arms that obstacle).
    """

    def __init__(self, room: RoomModel, collision_radius: float = DEFAULT_COLLISION_RADIUS):
        if collision_radius <= 0:
            raise ValueError("collision_radius must be positive")
        self.room = room
        self.radius = collision_radius
        self.first_t: Optional[float] = None
        self.last_t: Optional[float] = None
        self.exits = 0
        self.hits = 0
        self._inside: Optional[bool] = None
        self._touching: dict[str, bool] = {o.id: False for o in room.obstacles}
        self._histogram = {k: 0 for k in _MODE_KEYS}

    def observe(self, t: float, chest_ground: Point2, mode: LocomotionMode) -> None:
        if self.first_t is None:
            self.first_t = t
        self.last_t = t
        self._histogram[mode.value] += 1

        inside = self.room.contains(chest_ground)
        if self._inside is True and not inside:
            self.exits += 1
        self._inside = inside

        for box in self.room.obstacles:
            touching = distance_to_obstacle(chest_ground, box) <= self.radius
            if touching and not self._touching[box.id]:
                self.hits += 1
            self._touching[box.id] = touching

    def report(self) -> MetricsReport:
        task_time = 0.0
        if self.first_t is not None and self.last_t is not None:
            task_time = self.last_t - self.first_t
        return MetricsReport(
            task_time=task_time,
            total_exits=self.exits,
            total_hits=self.hits,
            runs=1,
            runs_with_exit=1 if self.exits else 0,
            runs_with_hit=1 if self.hits else 0,
            mode_histogram=dict(self._histogram),
        )


def frame_record(
    tick: int,
    result: PipelineResult,
    metrics: MetricsReport,
) -> dict:
    """The per-tick log record; also the body of a streamed state frame."""
    real = result.real
    avatar = result.avatar
    return {
        "type": "frame",
        "tick": tick,
        "real": {"x": real.x, "z": real.z, "yaw": real.yaw},
        "avatar": {
            "x": avatar.position.x,
            "y": avatar.position.y,
            "z": avatar.position.z,
            "yaw": avatar.yaw,
        },
        "mode": result.mode.value,
        "v_wip": result.v_wip,
        "warning": result.warning.to_dict(),
        "metrics": metrics.to_dict(),
    }


@dataclass(frozen=True)
class SimResult:
    metrics: MetricsReport
    records: tuple[dict, ...]


def run_trace(cfg: SimConfig, trace: Sequence[SkeletonFrame]) -> SimResult:
    """Replay a trace through the full pipeline and collect metrics.

    Raises:
        ValueError: empty trace, or non-monotone timestamps (the offending
        frame index is named).
    """
    if not trace:
        raise ValueError("trace is empty")
    for i in range(1, len(trace)):
        if trace[i].t <= trace[i - 1].t:
            raise ValueError(
                f"non-monotone timestamp at trace index {i}: "
                f"{trace[i].t} after {trace[i - 1].t}"
            )
    pipeline = PersonPipeline(cfg.room, cfg.locomotion, cfg.warning)
    metrics = MetricsAccumulator(cfg.room, cfg.collision_radius)
    records = []
    for tick, frame in enumerate(trace):
        result = pipeline.feed(frame)
        metrics.observe(result.estimate.t, result.estimate.chest.ground, result.mode)
        records.append(frame_record(tick, result, metrics.report()))
    return SimResult(metrics=metrics.report(), records=tuple(records))


def serialize_log(cfg: SimConfig, result: SimResult) -> str:
    """Full frame log as line-delimited JSON: header, frames, metrics trailer."""
    lines = [
        json.dumps(
            {"type": "header", "room": cfg.room.to_dict(), "config": cfg.to_dict()}
        )
    ]
    lines.extend(json.dumps(record) for record in result.records)
    lines.append(json.dumps({"type": "metrics", **result.metrics.to_dict()}))
    return "\n".join(lines) + "\n"


def write_frame_log(path: Union[str, Path], cfg: SimConfig, result: SimResult) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_log(cfg, result))


def read_metrics_from_log(path: Union[str, Path]) -> MetricsReport:
    """Recover the final MetricsReport from a frame log's trailer line."""
    trailer: Optional[dict] = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            if record.get("type") == "metrics":
                trailer = record
    if trailer is None:
        raise ValueError(f"{path}: no metrics trailer found")
    trailer.pop("type")
    return MetricsReport(
        task_time=trailer["task_time"],
        total_exits=trailer["total_exits"],
        total_hits=trailer["total_hits"],
        runs=trailer["runs"],
        runs_with_exit=trailer["runs_with_exit"],
        runs_with_hit=trailer["runs_with_hit"],
        mode_histogram=trailer["mode_histogram"],
    )


def replay_determinism_check(cfg: SimConfig, trace: Sequence[SkeletonFrame]) -> bool:
    """True iff two full runs serialize to byte-identical logs."""
    first = serialize_log(cfg, run_trace(cfg, trace))
    second = serialize_log(cfg, run_trace(cfg, trace))
    return first == second
