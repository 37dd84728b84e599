"""Per-person composition: smoothing -> mode -> avatar -> warnings, one tick at a time.

Both the offline simulator and the live session host push skeleton frames
through this exact sequence, so any trace the classifier sees in tests is
treated identically to a live stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from saferoam.geometry import Pose2D, RoomModel, Vec3
from saferoam.locomotion import (
    AvatarPose,
    LocomotionConfig,
    LocomotionMode,
    LocomotionState,
    cwip_transition,
    integrate_avatar,
    wip_virtual_speed,
)
from saferoam.tracking import SkeletonFrame, TrackingEstimate, TrackingPipeline
from saferoam.warning import AlertState, WarningConfig, WarningFrame, compose_warning_frame


@dataclass(frozen=True)
class PipelineResult:
    """Everything one frame produced, ready for logging or streaming."""

    estimate: TrackingEstimate
    state: LocomotionState
    v_wip: float
    real: Pose2D
    avatar: AvatarPose
    warning: WarningFrame

    @property
    def mode(self) -> LocomotionMode:
        return self.state.mode


class PersonPipeline:
    """Stateful per-person pipeline; feed frames sequentially from one source."""

    def __init__(
        self,
        room: RoomModel,
        locomotion: LocomotionConfig = LocomotionConfig(),
        warning: WarningConfig = WarningConfig(),
    ):
        self.room = room
        self.locomotion_cfg = locomotion
        self.warning_cfg = warning
        self._tracking = TrackingPipeline()
        self._state = LocomotionState()
        self._alert = AlertState()
        self._avatar: Optional[AvatarPose] = None
        self._prev_chest: Optional[tuple[float, float]] = None

    def feed(self, frame: SkeletonFrame) -> PipelineResult:
        est = self._tracking.feed(frame)
        real = Pose2D(est.chest.x, est.chest.z, est.head_yaw)

        if est.dt > 0:
            self._state = cwip_transition(
                self._state,
                est.motion.chest_speed_h,
                est.steps.stepping,
                est.dt,
                self.locomotion_cfg,
            )
        mode = self._state.mode

        v_wip = 0.0
        if mode is LocomotionMode.WALKING_IN_PLACE:
            v_wip = wip_virtual_speed(
                est.steps.pace, est.steps.last_peak_height, self.locomotion_cfg
            )

        chest_ground = est.chest.ground
        if self._avatar is None or self._prev_chest is None or est.dt <= 0:
            # First frame: the avatar spawns on the person, no motion yet.
            self._avatar = AvatarPose(
                position=Vec3(real.x, 0.0, real.z), yaw=real.yaw
            )
        else:
            displacement = (
                chest_ground[0] - self._prev_chest[0],
                chest_ground[1] - self._prev_chest[1],
            )
            self._avatar = integrate_avatar(
                self._avatar, mode, displacement, real.yaw, v_wip, est.dt
            )
        self._prev_chest = chest_ground

        warning, self._alert = compose_warning_frame(
            real, self.room, self._alert, est.t, self.warning_cfg
        )
        return PipelineResult(
            estimate=est,
            state=self._state,
            v_wip=v_wip,
            real=real,
            avatar=self._avatar,
            warning=warning,
        )
