"""The combined locomotion state machine and avatar kinematics.

Mode selection is a two-factor decision per tick: is the person translating
fast enough to count as real walking, and if not, are they marching in place?
Hysteresis (consecutive-frame entry, dwell-time exit with a speed margin)
keeps sensor noise from flapping the mode.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Union

from saferoam.geometry import Vec3, heading, wrap_angle


class LocomotionMode(Enum):
    STATIONARY = "stationary"
    NATURAL_WALKING = "natural_walking"
    WALKING_IN_PLACE = "walking_in_place"


@dataclass(frozen=True)
class LocomotionConfig:
    """Thresholds and gains for mode selection and walk-in-place speed.

    v_t is the chest-speed threshold separating real walking from everything
    else; the exit margin and dwell keep the machine from flapping near it.
    """

    v_t: float = 0.80  # m/s entry threshold into natural walking
    exit_margin: float = 0.10  # m/s below v_t required to start leaving
    enter_frames: int = 3  # consecutive above-threshold ticks to enter
    exit_dwell: float = 0.3  # s below the exit threshold to leave
    wip_gain: float = 0.5  # m of virtual travel per step at reference lift
    wip_reference_height: float = 0.25  # m knee lift that earns the full gain
    wip_max_speed: float = 2.0  # m/s clamp on virtual speed

    def __post_init__(self):
        if not self.v_t > self.exit_margin > 0:
            raise ValueError("must satisfy v_t > exit_margin > 0")
        if self.enter_frames < 1 or self.exit_dwell <= 0:
            raise ValueError("enter_frames >= 1 and exit_dwell > 0 required")
        if min(self.wip_gain, self.wip_reference_height, self.wip_max_speed) <= 0:
            raise ValueError("all gains must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "LocomotionConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown locomotion config fields: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return {
            "v_t": self.v_t,
            "exit_margin": self.exit_margin,
            "enter_frames": self.enter_frames,
            "exit_dwell": self.exit_dwell,
            "wip_gain": self.wip_gain,
            "wip_reference_height": self.wip_reference_height,
            "wip_max_speed": self.wip_max_speed,
        }


def load_locomotion_config(path: Union[str, Path]) -> LocomotionConfig:
    """Read a LocomotionConfig from a JSON file of config fields."""
    with open(path) as fh:
        return LocomotionConfig.from_dict(json.load(fh))


@dataclass(frozen=True)
class LocomotionState:
    """Current mode plus the hysteresis counters that guard its transitions."""

    mode: LocomotionMode = LocomotionMode.STATIONARY
    frames_above_threshold: int = 0
    time_below_exit_threshold: float = 0.0


def cwip_transition(
    state: LocomotionState,
    speed: float,
    stepping: bool,
    dt: float,
    cfg: LocomotionConfig = LocomotionConfig(),
) -> LocomotionState:
    """Advance the locomotion machine by one tick.

    Entry to natural walking requires speed > v_t on enter_frames consecutive
    ticks; leaving it requires speed < v_t - exit_margin sustained for
    exit_dwell seconds.  Outside natural walking the mode is walking-in-place
    when steps are active and stationary otherwise.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if speed < 0:
        raise ValueError(f"speed must be non-negative, got {speed}")

    # Cap keeps the counter bounded; only >= enter_frames is ever tested.
    frames_above = (
        min(state.frames_above_threshold + 1, cfg.enter_frames)
        if speed > cfg.v_t
        else 0
    )

    if state.mode is LocomotionMode.NATURAL_WALKING:
        if speed < cfg.v_t - cfg.exit_margin:
            time_below = state.time_below_exit_threshold + dt
            if time_below >= cfg.exit_dwell:
                mode = (
                    LocomotionMode.WALKING_IN_PLACE
                    if stepping
                    else LocomotionMode.STATIONARY
                )
                return LocomotionState(mode, frames_above, 0.0)
            return LocomotionState(LocomotionMode.NATURAL_WALKING, frames_above, time_below)
        return LocomotionState(LocomotionMode.NATURAL_WALKING, frames_above, 0.0)

    if frames_above >= cfg.enter_frames:
        return LocomotionState(LocomotionMode.NATURAL_WALKING, 0, 0.0)
    mode = LocomotionMode.WALKING_IN_PLACE if stepping else LocomotionMode.STATIONARY
    return LocomotionState(mode, frames_above, 0.0)


def wip_virtual_speed(
    pace: float, peak_height: float, cfg: LocomotionConfig = LocomotionConfig()
) -> float:
    """Virtual forward speed earned by marching in place.

    Linear in pace and in knee lift normalized by the reference height,
    clamped to the configured maximum.
    """
    if pace < 0 or peak_height < 0:
        raise ValueError("pace and peak_height must be non-negative")
    if pace == 0:
        return 0.0
    return min(
        cfg.wip_max_speed, cfg.wip_gain * pace * (peak_height / cfg.wip_reference_height)
    )


@dataclass(frozen=True)
class AvatarPose:
    """The person's proxy in the virtual world."""

    position: Vec3 = Vec3(0.0, 0.0, 0.0)
    yaw: float = 0.0


def integrate_avatar(
    pose: AvatarPose,
    mode: LocomotionMode,
    real_displacement: tuple[float, float],
    real_yaw: float,
    v_wip: float,
    dt: float,
) -> AvatarPose:
    """Move the avatar for one tick.

    Real displacement always maps 1:1 into the virtual world (so the safety
    model and the avatar never diverge); walking-in-place additionally
    advances the avatar along the gaze heading at the virtual speed.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    dx, dz = real_displacement
    if mode is LocomotionMode.WALKING_IN_PLACE:
        hx, hz = heading(real_yaw)
        dx += v_wip * dt * hx
        dz += v_wip * dt * hz
    return AvatarPose(
        position=Vec3(pose.position.x + dx, pose.position.y, pose.position.z + dz),
        yaw=wrap_angle(real_yaw),
    )
