"""saferoam: locomotion classification and real-world proximity warnings for
room-scale VR, driven entirely by skeleton joint streams.

The package is organized as a library:

- :mod:`saferoam.geometry`    rooms, obstacles, distances, bearings
- :mod:`saferoam.tracking`    joint smoothing, chest speed, step detection
- :mod:`saferoam.locomotion`  the three-state locomotion machine and avatar motion
- :mod:`saferoam.warning`     proximity zones, indicators, arrows, sound alerts
- :mod:`saferoam.calibration` boxplot-based speed-threshold derivation
- :mod:`saferoam.gait`        synthetic skeleton-trace generation
- :mod:`saferoam.sim`         trace-driven simulator and run metrics
- :mod:`saferoam.service`     live interactive session host (WebSocket / TCP)
"""

from saferoam.calibration import boxplot_fences, calibrate_threshold
from saferoam.gait import GaitKind, GaitParams, generate_gait
from saferoam.geometry import (
    ObstacleBox,
    LimitSegment,
    Pose2D,
    RoomModel,
    Vec3,
    default_room,
)
from saferoam.locomotion import AvatarPose, LocomotionConfig, LocomotionMode
from saferoam.pipeline import PersonPipeline
from saferoam.sim import MetricsReport, SimConfig, run_trace
from saferoam.service import InputCommand, SessionEngine
from saferoam.tracking import SkeletonFrame, load_trace, save_trace
from saferoam.warning import Zone, ZoneConfig, WarningFrame

__all__ = [
    "AvatarPose",
    "GaitKind",
    "GaitParams",
    "InputCommand",
    "LimitSegment",
    "LocomotionConfig",
    "LocomotionMode",
    "MetricsReport",
    "ObstacleBox",
    "PersonPipeline",
    "Pose2D",
    "RoomModel",
    "SessionEngine",
    "SimConfig",
    "SkeletonFrame",
    "Vec3",
    "WarningFrame",
    "Zone",
    "ZoneConfig",
    "boxplot_fences",
    "calibrate_threshold",
    "default_room",
    "generate_gait",
    "load_trace",
    "run_trace",
    "save_trace",
]

__version__ = "0.1.0"
