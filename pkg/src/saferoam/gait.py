"""Synthetic skeleton-stream generation.

A small kinematic body model stands in for a depth camera: the chest and head
ride a steerable ground position, the knees pulse in alternation while the
person walks or marches, and optional Gaussian noise roughs every joint up.
The same incremental synthesizer drives both offline trace generation and the
live session host, so classification is exercised through one code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from saferoam.geometry import Point2, Vec3, wrap_angle
from saferoam.tracking import SkeletonFrame

# Body-animation constants; small enough to stay out of the classifier's way.
WALK_LIFT_FACTOR = 0.6  # knee lift while walking, as a fraction of the march lift
KNEE_HALF_SPACING = 0.10  # m from body center to each knee, along the right axis
BOB_AMPLITUDE = 0.015  # m of vertical chest/head bob per step
SWAY_AMPLITUDE = 0.01  # m of side-to-side sway while walking
DRIFT_RADIUS = 0.01  # m of slow chest drift while marching in place
DRIFT_RATE = 0.4  # Hz of that drift

# Mixed-script phase boundaries as fractions of the total duration.
_MIXED_PHASES = (0.2, 0.5, 0.7)  # stand | walk | stand | march


class GaitKind(Enum):
    STATIONARY = "stationary"
    NATURAL_WALK = "natural_walk"
    WALK_IN_PLACE = "walk_in_place"
    MIXED_SCRIPT = "mixed_script"


@dataclass(frozen=True)
class BodyDims:
    """Standing joint heights in meters."""

    chest_height: float = 1.30
    head_height: float = 1.65
    knee_height: float = 0.45

    def __post_init__(self):
        if not 0 < self.knee_height < self.chest_height < self.head_height:
            raise ValueError("need 0 < knee_height < chest_height < head_height")


@dataclass(frozen=True)
class GaitParams:
    """Recipe for one synthetic trace.

    path carries 2D waypoints: the walk route for natural_walk/mixed_script,
    or just the standing spot (first point) for the other kinds.
    """

    kind: GaitKind
    path: tuple[Point2, ...] = ()
    ground_speed: float = 1.2  # m/s along the path
    step_rate: float = 2.0  # steps/s across both knees
    knee_lift: float = 0.25  # m peak knee rise when marching
    noise_sigma: float = 0.0  # m of per-axis Gaussian noise
    frame_rate: float = 30.0  # Hz
    duration: float = 10.0  # s
    seed: int = 0
    facing: float = 0.0  # initial yaw, used when the path fixes no direction
    body: BodyDims = field(default_factory=BodyDims)

    def __post_init__(self):
        if self.frame_rate <= 0 or self.duration <= 0:
            raise ValueError("frame_rate and duration must be positive")
        if min(self.ground_speed, self.step_rate, self.knee_lift) < 0:
            raise ValueError("speeds and knee_lift must be non-negative")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> "GaitParams":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown gait params: {sorted(unknown)}")
        fields = dict(data)
        fields["kind"] = GaitKind(fields["kind"])
        if "path" in fields:
            fields["path"] = tuple((float(x), float(z)) for x, z in fields["path"])
        if "body" in fields:
            fields["body"] = BodyDims(**fields["body"])
        return cls(**fields)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "path": [[x, z] for x, z in self.path],
            "ground_speed": self.ground_speed,
            "step_rate": self.step_rate,
            "knee_lift": self.knee_lift,
            "noise_sigma": self.noise_sigma,
            "frame_rate": self.frame_rate,
            "duration": self.duration,
            "seed": self.seed,
            "facing": self.facing,
            "body": {
                "chest_height": self.body.chest_height,
                "head_height": self.body.head_height,
                "knee_height": self.body.knee_height,
            },
        }


class _PathCursor:
    """Arc-length lookup along a waypoint polyline."""

    def __init__(self, waypoints: Sequence[Point2]):
        if len(waypoints) < 2:
            raise ValueError("a walk path needs at least 2 waypoints")
        self.points = [tuple(map(float, p)) for p in waypoints]
        self.cumulative = [0.0]
        for a, b in zip(self.points, self.points[1:]):
            step = math.hypot(b[0] - a[0], b[1] - a[1])
            if step == 0:
                raise ValueError("path waypoints must be distinct")
            self.cumulative.append(self.cumulative[-1] + step)
        self.length = self.cumulative[-1]

    def at(self, s: float) -> tuple[Point2, Point2]:
        """Position and unit tangent at arc length s (clamped to the path)."""
        s = min(max(s, 0.0), self.length)
        # Walk the short segment list; paths here are a handful of waypoints.
        i = 1
        while i < len(self.cumulative) - 1 and self.cumulative[i] < s:
            i += 1
        a, b = self.points[i - 1], self.points[i]
        seg = self.cumulative[i] - self.cumulative[i - 1]
        u = (s - self.cumulative[i - 1]) / seg
        pos = (a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]))
        tangent = ((b[0] - a[0]) / seg, (b[1] - a[1]) / seg)
        return pos, tangent


class FrameSynthesizer:
    """Incremental skeleton-frame source driven by per-tick motion commands.

    Holds the ground position, knee-pulse phase and noise stream; callers
    decide velocity, gaze and whether the person is marching.  Intended for
    single-threaded use; one instance per simulated person.
    """

    def __init__(
        self,
        params: GaitParams,
        start: Point2 = (0.0, 0.0),
        yaw: float = 0.0,
    ):
        self.params = params
        self.x, self.z = float(start[0]), float(start[1])
        self.yaw = wrap_angle(yaw)
        self.t = 0.0
        self._phase = 0.0  # knee-step phase, in steps
        self._stepping = False
        self._speed = 0.0
        self._marching = False
        self._rng = np.random.default_rng(params.seed)

    def current(self) -> SkeletonFrame:
        """The frame for the present instant (used once, for t = 0)."""
        return self._emit()

    def step(
        self, dt: float, velocity: Point2, yaw: float, marching: bool
    ) -> SkeletonFrame:
        """Advance the body by one tick and return the new frame."""
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        vx, vz = velocity
        self.x += vx * dt
        self.z += vz * dt
        self.yaw = wrap_angle(yaw)
        self.t += dt
        self._speed = math.hypot(vx, vz)
        self._marching = marching
        stepping = marching or self._speed > 1e-9
        if stepping:
            cadence = self.params.step_rate
            self._phase += cadence * dt
        elif self._stepping:
            # Abort any lift in progress: the foot goes down with the person.
            self._phase = math.ceil(self._phase)
        self._stepping = stepping
        return self._emit()

    def _emit(self) -> SkeletonFrame:
        p = self.params
        phase = self._phase
        step_index = math.floor(phase)
        u = phase - step_index  # position within the current step

        lift = 0.0
        if self._stepping:
            lift = p.knee_lift if self._marching else WALK_LIFT_FACTOR * p.knee_lift
        pulse = lift * math.sin(math.pi * u)
        left_up = step_index % 2 == 0
        knee_l_y = p.body.knee_height + (pulse if left_up else 0.0)
        knee_r_y = p.body.knee_height + (0.0 if left_up else pulse)

        bob = 0.0
        sway = 0.0
        if self._stepping:
            bob = BOB_AMPLITUDE * 0.5 * (1.0 - math.cos(2.0 * math.pi * phase))
            if not self._marching:
                # sin(pi*phase) flips sign each step: sway toward the support leg.
                sway = SWAY_AMPLITUDE * math.sin(math.pi * phase)

        rx, rz = math.cos(self.yaw), math.sin(self.yaw)  # unit right axis
        cx = self.x + sway * rx
        cz = self.z + sway * rz

        noise = self._rng.normal(0.0, p.noise_sigma, size=12)
        return SkeletonFrame(
            t=self.t,
            chest=Vec3(
                cx + noise[0], p.body.chest_height + bob + noise[1], cz + noise[2]
            ),
            head=Vec3(
                cx + noise[3], p.body.head_height + bob + noise[4], cz + noise[5]
            ),
            knee_left=Vec3(
                self.x - KNEE_HALF_SPACING * rx + noise[6],
                knee_l_y + noise[7],
                self.z - KNEE_HALF_SPACING * rz + noise[8],
            ),
            knee_right=Vec3(
                self.x + KNEE_HALF_SPACING * rx + noise[9],
                knee_r_y + noise[10],
                self.z + KNEE_HALF_SPACING * rz + noise[11],
            ),
            head_yaw=self.yaw,
        )


def _drift_offset(t: float) -> Point2:
    """Slow circular chest drift while marching; zero at t = 0."""
    w = 2.0 * math.pi * DRIFT_RATE
    return (DRIFT_RADIUS * math.sin(w * t), DRIFT_RADIUS * (math.cos(w * t) - 1.0))


def generate_gait(params: GaitParams) -> list[SkeletonFrame]:
    """Deterministic synthetic trace for the given recipe.

    Stationary holds still; natural_walk follows the waypoint path at
    ground_speed (standing once it ends); walk_in_place marches on the spot
    with a drift well under any walking speed; mixed_script strings the three
    together (stand, walk, stand, march) over the duration.

    Raises:
        ValueError: natural_walk or mixed_script without a 2+ point path.
    """
    kind = params.kind
    needs_path = kind in (GaitKind.NATURAL_WALK, GaitKind.MIXED_SCRIPT)
    cursor = _PathCursor(params.path) if needs_path else None
    if not needs_path and params.path:
        start: Point2 = params.path[0]
    elif cursor is not None:
        start = cursor.points[0]
    else:
        start = (0.0, 0.0)

    if cursor is not None:
        _, tangent0 = cursor.at(0.0)
        yaw0 = math.atan2(-tangent0[0], tangent0[1])
    else:
        yaw0 = params.facing

    dt = 1.0 / params.frame_rate
    n = max(2, int(round(params.duration * params.frame_rate)))
    synth = FrameSynthesizer(params, start=start, yaw=yaw0)
    frames = [synth.current()]

    # Per-tick drivers produce (velocity, yaw, marching); positions the driver
    # knows analytically are fed as finite differences so integration is exact.
    prev_walk = start
    prev_drift = (0.0, 0.0)
    walk_started = 0.0
    march_anchor: Optional[Point2] = None
    yaw = yaw0
    for i in range(1, n):
        t = i * dt
        if kind is GaitKind.STATIONARY:
            velocity: Point2 = (0.0, 0.0)
            marching = False
        elif kind is GaitKind.WALK_IN_PLACE:
            drift = _drift_offset(t)
            velocity = (
                (drift[0] - prev_drift[0]) / dt,
                (drift[1] - prev_drift[1]) / dt,
            )
            prev_drift = drift
            marching = True
        elif kind is GaitKind.NATURAL_WALK:
            s = params.ground_speed * t
            pos, tangent = cursor.at(s)
            velocity = ((pos[0] - prev_walk[0]) / dt, (pos[1] - prev_walk[1]) / dt)
            prev_walk = pos
            if s <= cursor.length:
                yaw = math.atan2(-tangent[0], tangent[1])
            marching = False
        else:  # mixed script
            f = t / params.duration
            if f < _MIXED_PHASES[0] or (_MIXED_PHASES[1] <= f < _MIXED_PHASES[2]):
                velocity = (0.0, 0.0)
                marching = False
                walk_started = t  # keeps the walk clock pinned until it starts
                march_anchor = None
            elif f < _MIXED_PHASES[1]:
                s = params.ground_speed * (t - walk_started)
                pos, tangent = cursor.at(s)
                velocity = (
                    (pos[0] - prev_walk[0]) / dt,
                    (pos[1] - prev_walk[1]) / dt,
                )
                prev_walk = pos
                if s <= cursor.length:
                    yaw = math.atan2(-tangent[0], tangent[1])
                marching = False
                march_anchor = None
            else:
                if march_anchor is None:
                    march_anchor = t
                    prev_drift = (0.0, 0.0)
                drift = _drift_offset(t - march_anchor)
                velocity = (
                    (drift[0] - prev_drift[0]) / dt,
                    (drift[1] - prev_drift[1]) / dt,
                )
                prev_drift = drift
                marching = True
        frames.append(synth.step(dt, velocity, yaw, marching))
    return frames
