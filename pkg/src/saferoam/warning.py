"""Proximity warnings: zones, indicator appearance, off-view arrows, sound alerts.

Every hazard (tracking-area limit or obstacle) is evaluated independently per
tick: distance -> zone -> indicator color/alpha, plus bearing-based arrow and
alarm decisions for hazards outside the field of view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Sequence

from saferoam.geometry import (
    Hazard,
    ObstacleBox,
    Pose2D,
    RoomModel,
    bearing_to,
    hazard_distance,
    in_fov,
    nearest_hazard_point,
)

DEFAULT_FOV_HALF_ANGLE = math.radians(45.0)
GAZE_ACK_CONE = math.radians(15.0)  # "looking directly at" tolerance

# Appearance anchors: adjectives in the source material mapped to numbers.
ALPHA_TRANSPARENT = 0.0
ALPHA_SEMITRANSPARENT = 0.5
ALPHA_ALMOST_OPAQUE = 0.9
WHITE = (1.0, 1.0, 1.0)
YELLOW = (1.0, 1.0, 0.0)
RED = (1.0, 0.0, 0.0)


class Zone(IntEnum):
    """Proximity bands, ordered so closer danger compares smaller."""

    DANGER = 0
    WARNING = 1
    PRE_WARNING = 2
    NORMAL = 3

    @property
    def wire_name(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class ZoneConfig:
    """Zone boundaries derived from step length plus a safety margin.

    Defaults: half a step plus margin bounds Danger, one average step bounds
    Warning, a step and a half bounds Pre-Warning.
    """

    danger_limit: float = 0.40
    warning_limit: float = 0.80
    prewarning_limit: float = 1.20
    step_length: float = 0.75  # derivation constant, informational
    safety_margin: float = 0.20  # derivation constant, informational

    def __post_init__(self):
        if not 0 < self.danger_limit < self.warning_limit < self.prewarning_limit:
            raise ValueError("zone limits must be ordered 0 < danger < warning < prewarning")

    @classmethod
    def from_dict(cls, data: dict) -> "ZoneConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown zone config fields: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return {
            "danger_limit": self.danger_limit,
            "warning_limit": self.warning_limit,
            "prewarning_limit": self.prewarning_limit,
            "step_length": self.step_length,
            "safety_margin": self.safety_margin,
        }


def classify_zone(distance: float, cfg: ZoneConfig = ZoneConfig()) -> Zone:
    """Zone for a hazard distance; intervals are half-open, lower-inclusive.

    A negative distance (already past a limit) is fail-safe Danger.
    """
    if distance < cfg.danger_limit:
        return Zone.DANGER
    if distance < cfg.warning_limit:
        return Zone.WARNING
    if distance < cfg.prewarning_limit:
        return Zone.PRE_WARNING
    return Zone.NORMAL


@dataclass(frozen=True)
class IndicatorAppearance:
    """Visibility flag plus straight RGBA for the renderer; no client-side math."""

    visible: bool
    rgba: tuple[float, float, float, float]


def _lerp(a: float, b: float, t: float) -> float:
    return a + (b - a) * t


def _lerp_rgba(c0, a0, c1, a1, t: float) -> tuple[float, float, float, float]:
    return (
        _lerp(c0[0], c1[0], t),
        _lerp(c0[1], c1[1], t),
        _lerp(c0[2], c1[2], t),
        _lerp(a0, a1, t),
    )


def indicator_appearance(
    distance: float, cfg: ZoneConfig = ZoneConfig()
) -> IndicatorAppearance:
    """Color ramp for one hazard indicator.

    Invisible in Normal; white/transparent fading to yellow/semitransparent
    across Pre-Warning; yellow to red/almost-opaque across Warning; constant
    red/almost-opaque in Danger.
    """
    zone = classify_zone(distance, cfg)
    if zone is Zone.NORMAL:
        return IndicatorAppearance(False, (*WHITE, ALPHA_TRANSPARENT))
    if zone is Zone.PRE_WARNING:
        t = (cfg.prewarning_limit - distance) / (cfg.prewarning_limit - cfg.warning_limit)
        return IndicatorAppearance(
            True, _lerp_rgba(WHITE, ALPHA_TRANSPARENT, YELLOW, ALPHA_SEMITRANSPARENT, t)
        )
    if zone is Zone.WARNING:
        t = (cfg.warning_limit - distance) / (cfg.warning_limit - cfg.danger_limit)
        return IndicatorAppearance(
            True, _lerp_rgba(YELLOW, ALPHA_SEMITRANSPARENT, RED, ALPHA_ALMOST_OPAQUE, t)
        )
    return IndicatorAppearance(True, (*RED, ALPHA_ALMOST_OPAQUE))


@dataclass(frozen=True)
class HazardStatus:
    """Everything the warning layer knows about one hazard at one instant."""

    hazard_id: str
    kind: str  # "limit" | "obstacle"
    distance: float  # signed for limits, Euclidean for obstacles
    zone: Zone
    bearing: float  # to the nearest hazard point, radians
    in_fov: bool
    appearance: IndicatorAppearance

    def to_dict(self) -> dict:
        return {
            "id": self.hazard_id,
            "kind": self.kind,
            "distance": self.distance,
            "zone": self.zone.wire_name,
            "bearing": self.bearing,
            "in_fov": self.in_fov,
            "rgba": list(self.appearance.rgba),
        }


def offscreen_arrow(status: HazardStatus) -> Optional[str]:
    """Arrow side for a hazard the person cannot currently see.

    Emitted only for out-of-view hazards at Pre-Warning or closer; positive
    bearings point left, non-positive (and the +-pi tie) point right.
    """
    if status.in_fov or status.zone is Zone.NORMAL:
        return None
    if 0.0 < status.bearing < math.pi:
        return "left"
    return "right"


@dataclass(frozen=True)
class AlertState:
    """Which hazards are currently sounding, and which were gaze-acknowledged.

    An acknowledged hazard stays quiet until it leaves Danger and re-enters.
    """

    ringing: frozenset[str] = frozenset()
    acknowledged: frozenset[str] = frozenset()


def sound_alert_step(
    alert: AlertState, statuses: Sequence[HazardStatus]
) -> AlertState:
    """Advance the alarm state for one tick.

    Per hazard: ring while in Danger out of view (unless acknowledged); stop
    on leaving Danger or on direct gaze; gaze acknowledges until the hazard
    leaves Danger and comes back.
    """
    ringing = set()
    acknowledged = set()
    for status in statuses:
        hid = status.hazard_id
        if status.zone is not Zone.DANGER:
            continue  # leaving Danger clears both flags
        gazed = abs(status.bearing) <= GAZE_ACK_CONE
        if gazed or hid in alert.acknowledged:
            acknowledged.add(hid)
            continue
        if hid in alert.ringing or not status.in_fov:
            ringing.add(hid)
    return AlertState(ringing=frozenset(ringing), acknowledged=frozenset(acknowledged))


@dataclass(frozen=True)
class WarningFrame:
    """Composite warning output for one instant."""

    t: float
    hazards: tuple[HazardStatus, ...]
    arrows: tuple[tuple[str, str], ...]  # (hazard id, side)
    sound_on: bool

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "hazards": [h.to_dict() for h in self.hazards],
            "arrows": [{"id": hid, "side": side} for hid, side in self.arrows],
            "sound_on": self.sound_on,
        }


@dataclass(frozen=True)
class WarningConfig:
    zones: ZoneConfig = ZoneConfig()
    fov_half_angle: float = DEFAULT_FOV_HALF_ANGLE

    def __post_init__(self):
        if not 0 < self.fov_half_angle < math.pi:
            raise ValueError("fov_half_angle must be in (0, pi)")


def evaluate_hazard(
    pose: Pose2D, hazard: Hazard, cfg: WarningConfig = WarningConfig()
) -> HazardStatus:
    """Distance, zone, bearing, FOV and appearance for a single hazard."""
    distance = hazard_distance(pose.position, hazard)
    zone = classify_zone(distance, cfg.zones)
    target = nearest_hazard_point(pose.position, hazard)
    if target == pose.position:
        # Standing on the hazard: direction is degenerate, treat as dead ahead.
        bearing = 0.0
    else:
        bearing = bearing_to(pose, target)
    return HazardStatus(
        hazard_id=hazard.id,
        kind="obstacle" if isinstance(hazard, ObstacleBox) else "limit",
        distance=distance,
        zone=zone,
        bearing=bearing,
        in_fov=in_fov(bearing, cfg.fov_half_angle),
        appearance=indicator_appearance(distance, cfg.zones),
    )


def compose_warning_frame(
    pose: Pose2D,
    room: RoomModel,
    alert: AlertState,
    t: float,
    cfg: WarningConfig = WarningConfig(),
) -> tuple[WarningFrame, AlertState]:
    """Evaluate every hazard in the room and advance the alarm state."""
    statuses = tuple(evaluate_hazard(pose, h, cfg) for h in room.hazards)
    arrows = tuple(
        (s.hazard_id, side)
        for s in statuses
        if (side := offscreen_arrow(s)) is not None
    )
    next_alert = sound_alert_step(alert, statuses)
    frame = WarningFrame(
        t=t,
        hazards=statuses,
        arrows=arrows,
        sound_on=bool(next_alert.ringing),
    )
    return frame, next_alert
