"""Skeleton-stream processing: joint smoothing, chest speed, step events.

One :class:`TrackingPipeline` owns the state for one tracked person and must be
fed frames sequentially from a single source.  Distinct pipelines are fully
independent and may run concurrently.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from saferoam.geometry import Vec3

# Filter defaults sized for depth-camera noise (a couple of centimeters).
DEFAULT_PROCESS_NOISE = 1.0  # (m/s^2)^2 white-acceleration intensity
DEFAULT_MEASUREMENT_NOISE = 0.02**2  # (m)^2

DEFAULT_SPEED_WINDOW = 0.5  # s of chest history per speed estimate

# Step-detector defaults; all config-exposed through StepConfig.
DEFAULT_RISE_THRESHOLD = 0.05  # m a knee must climb above baseline
DEFAULT_REFRACTORY = 0.25  # s between events on the same knee
DEFAULT_PACE_WINDOW = 2.0  # s over which pace is counted
DEFAULT_ACTIVITY_TIMEOUT = 1.0  # s since last event to still count as stepping
BASELINE_WINDOW = 5.0  # s of knee-height history for the baseline percentile
BASELINE_PERCENTILE = 5.0


@dataclass(frozen=True)
class SkeletonFrame:
    """One timestamped sample of the tracked joints."""

    t: float
    head: Vec3
    chest: Vec3
    knee_left: Vec3
    knee_right: Vec3
    head_yaw: float

    def __post_init__(self):
        if not math.isfinite(self.t) or not math.isfinite(self.head_yaw):
            raise ValueError("frame timestamp and yaw must be finite")

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "chest": [self.chest.x, self.chest.y, self.chest.z],
            "head": [self.head.x, self.head.y, self.head.z],
            "head_yaw": self.head_yaw,
            "knee_l": [self.knee_left.x, self.knee_left.y, self.knee_left.z],
            "knee_r": [self.knee_right.x, self.knee_right.y, self.knee_right.z],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SkeletonFrame":
        return cls(
            t=float(data["t"]),
            head=Vec3(*map(float, data["head"])),
            chest=Vec3(*map(float, data["chest"])),
            knee_left=Vec3(*map(float, data["knee_l"])),
            knee_right=Vec3(*map(float, data["knee_r"])),
            head_yaw=float(data["head_yaw"]),
        )


def load_trace(path: Union[str, Path]) -> list[SkeletonFrame]:
    """Read a JSON-lines trace file, enforcing strictly increasing timestamps."""
    frames: list[SkeletonFrame] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                frames.append(SkeletonFrame.from_dict(json.loads(line)))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}: bad trace record on line {lineno}: {exc}")
            if len(frames) >= 2 and frames[-1].t <= frames[-2].t:
                raise ValueError(
                    f"{path}: non-monotone timestamp on line {lineno} "
                    f"({frames[-1].t} after {frames[-2].t})"
                )
    return frames


def save_trace(frames: Iterable[SkeletonFrame], path: Union[str, Path]) -> None:
    with open(path, "w") as fh:
        for frame in frames:
            fh.write(json.dumps(frame.to_dict()) + "\n")


class JointFilter:
    """Constant-velocity Kalman filter for one joint, one independent filter per axis.

    State per axis is (position, velocity); process noise follows the
    continuous white-acceleration model so Q scales correctly with dt.
    """

    def __init__(
        self,
        q: float = DEFAULT_PROCESS_NOISE,
        r: float = DEFAULT_MEASUREMENT_NOISE,
    ):
        if q <= 0 or r <= 0:
            raise ValueError("noise intensities q and r must be positive")
        self.q = q
        self.r = r
        # x: (3 axes, 2 states); P: (3, 2, 2)
        self.x = np.zeros((3, 2))
        self.P = np.zeros((3, 2, 2))
        self.initialized = False

    def update(self, measurement: Vec3, dt: float) -> Vec3:
        """Run one predict/update cycle and return the smoothed position.

        The first call initializes the filter at the measurement with zero
        velocity.  dt must be positive.
        """
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        z = np.array([measurement.x, measurement.y, measurement.z])
        if not self.initialized:
            self.x[:, 0] = z
            self.x[:, 1] = 0.0
            self.P[:] = np.diag([self.r, 1.0])
            self.initialized = True
            return measurement

        F = np.array([[1.0, dt], [0.0, 1.0]])
        Q = self.q * np.array(
            [[dt**3 / 3.0, dt**2 / 2.0], [dt**2 / 2.0, dt]]
        )
        for axis in range(3):
            x = F @ self.x[axis]
            P = F @ self.P[axis] @ F.T + Q
            s = P[0, 0] + self.r
            k = P[:, 0] / s  # gain column for H = [1, 0]
            x = x + k * (z[axis] - x[0])
            # Joseph form keeps P symmetric positive semi-definite.
            ikh = np.eye(2) - np.outer(k, [1.0, 0.0])
            P = ikh @ P @ ikh.T + self.r * np.outer(k, k)
            self.x[axis] = x
            self.P[axis] = 0.5 * (P + P.T)
        return Vec3(self.x[0, 0], self.x[1, 0], self.x[2, 0])

    @property
    def position(self) -> Vec3:
        return Vec3(self.x[0, 0], self.x[1, 0], self.x[2, 0])

    @property
    def velocity(self) -> Vec3:
        return Vec3(self.x[0, 1], self.x[1, 1], self.x[2, 1])


@dataclass(frozen=True)
class MotionEstimate:
    """Horizontal chest speed over a sliding window."""

    chest_speed_h: float
    window: float
    warming_up: bool = False


class ChestSpeedEstimator:
    """Net horizontal displacement of the chest across a sliding time window."""

    def __init__(self, window: float = DEFAULT_SPEED_WINDOW):
        if window <= 0:
            raise ValueError("window must be positive")
        self.window = window
        self._history: deque[tuple[float, float, float]] = deque()

    def add(self, t: float, chest: Vec3) -> MotionEstimate:
        self._history.append((t, chest.x, chest.z))
        # Keep one sample at or before t - window so the span always covers it.
        while len(self._history) >= 2 and self._history[1][0] <= t - self.window:
            self._history.popleft()
        t0, x0, z0 = self._history[0]
        span = t - t0
        if span < self.window:
            return MotionEstimate(0.0, self.window, warming_up=True)
        speed = math.hypot(chest.x - x0, chest.z - z0) / span
        return MotionEstimate(speed, self.window)


class KneePhase(Enum):
    BELOW = "below"
    RISING = "rising"
    ABOVE = "above"


class Knee(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class StepEvent:
    """One completed knee lift: the knee rose past the threshold and came back down."""

    t: float
    knee: Knee
    peak_height: float  # meters above that knee's standing baseline


@dataclass(frozen=True)
class StepConfig:
    rise_threshold: float = DEFAULT_RISE_THRESHOLD
    refractory: float = DEFAULT_REFRACTORY
    pace_window: float = DEFAULT_PACE_WINDOW
    activity_timeout: float = DEFAULT_ACTIVITY_TIMEOUT


class _KneeTracker:
    """Per-knee baseline tracking and the below -> rising -> above pulse machine."""

    def __init__(self, knee: Knee, cfg: StepConfig):
        self.knee = knee
        self.cfg = cfg
        self.phase = KneePhase.BELOW
        self.baseline: Optional[float] = None
        self.peak = 0.0
        self.last_event_t = -math.inf
        self._heights: deque[tuple[float, float]] = deque()

    def observe(self, t: float, height: float) -> Optional[StepEvent]:
        self._heights.append((t, height))
        while self._heights and self._heights[0][0] < t - BASELINE_WINDOW:
            self._heights.popleft()
        # The baseline only moves while the knee is down; a lift in progress
        # must not drag its own reference upward.
        if self.phase is KneePhase.BELOW or self.baseline is None:
            values = [h for _, h in self._heights]
            self.baseline = float(np.percentile(values, BASELINE_PERCENTILE))

        delta = self.cfg.rise_threshold
        rise = height - self.baseline
        if self.phase is KneePhase.BELOW:
            if rise >= delta / 2 and t - self.last_event_t >= self.cfg.refractory:
                self.phase = KneePhase.RISING
                self.peak = rise
        elif self.phase is KneePhase.RISING:
            self.peak = max(self.peak, rise)
            if rise >= delta:
                self.phase = KneePhase.ABOVE
            elif rise < delta / 2:
                self.phase = KneePhase.BELOW  # never reached threshold; no event
        elif self.phase is KneePhase.ABOVE:
            self.peak = max(self.peak, rise)
            if rise < delta / 2:
                self.phase = KneePhase.BELOW
                self.last_event_t = t
                return StepEvent(t=t, knee=self.knee, peak_height=self.peak)
        return None


@dataclass(frozen=True)
class StepEstimate:
    events: tuple[StepEvent, ...]  # events emitted at this sample
    pace: float  # steps/s across both knees over the pace window
    last_peak_height: float  # max peak among events in the window, 0 if none
    stepping: bool


class StepDetector:
    """Knee-height pulse detection plus pace bookkeeping over both knees."""

    def __init__(self, cfg: StepConfig = StepConfig()):
        self.cfg = cfg
        self._left = _KneeTracker(Knee.LEFT, cfg)
        self._right = _KneeTracker(Knee.RIGHT, cfg)
        self._recent: deque[StepEvent] = deque()

    def observe(self, t: float, left_height: float, right_height: float) -> StepEstimate:
        if not (math.isfinite(left_height) and math.isfinite(right_height)):
            raise ValueError("knee heights must be finite")
        emitted = []
        for tracker, height in ((self._left, left_height), (self._right, right_height)):
            event = tracker.observe(t, height)
            if event is not None:
                emitted.append(event)
        self._recent.extend(emitted)
        while self._recent and self._recent[0].t < t - self.cfg.pace_window:
            self._recent.popleft()
        pace = len(self._recent) / self.cfg.pace_window
        last_peak = max((e.peak_height for e in self._recent), default=0.0)
        stepping = is_stepping(
            t, self._recent[-1].t if self._recent else None, self.cfg.activity_timeout
        )
        return StepEstimate(
            events=tuple(emitted),
            pace=pace,
            last_peak_height=last_peak,
            stepping=stepping,
        )


def is_stepping(
    now: float,
    last_event_t: Optional[float],
    timeout: float = DEFAULT_ACTIVITY_TIMEOUT,
) -> bool:
    """True iff a step event occurred within the activity timeout."""
    return last_event_t is not None and now - last_event_t <= timeout


@dataclass(frozen=True)
class TrackingEstimate:
    """Everything downstream layers need from one skeleton frame."""

    t: float
    dt: float
    chest: Vec3
    head: Vec3
    knee_left: Vec3
    knee_right: Vec3
    head_yaw: float
    motion: MotionEstimate
    steps: StepEstimate


class TrackingPipeline:
    """Sequential frame-in, estimate-out transformer for one tracked person."""

    def __init__(
        self,
        q: float = DEFAULT_PROCESS_NOISE,
        r: float = DEFAULT_MEASUREMENT_NOISE,
        speed_window: float = DEFAULT_SPEED_WINDOW,
        step_config: StepConfig = StepConfig(),
    ):
        self._filters = {
            "chest": JointFilter(q, r),
            "head": JointFilter(q, r),
            "knee_left": JointFilter(q, r),
            "knee_right": JointFilter(q, r),
        }
        self._speed = ChestSpeedEstimator(speed_window)
        self._steps = StepDetector(step_config)
        self._last_t: Optional[float] = None

    def feed(self, frame: SkeletonFrame) -> TrackingEstimate:
        if self._last_t is not None and frame.t <= self._last_t:
            raise ValueError(
                f"timestamps must be strictly increasing ({frame.t} after {self._last_t})"
            )
        dt = frame.t - self._last_t if self._last_t is not None else 0.0
        self._last_t = frame.t
        # First frame: seed the filters with dt-independent initialization.
        step_dt = dt if dt > 0 else 1e-3
        chest = self._filters["chest"].update(frame.chest, step_dt)
        head = self._filters["head"].update(frame.head, step_dt)
        knee_l = self._filters["knee_left"].update(frame.knee_left, step_dt)
        knee_r = self._filters["knee_right"].update(frame.knee_right, step_dt)
        motion = self._speed.add(frame.t, chest)
        steps = self._steps.observe(frame.t, knee_l.y, knee_r.y)
        return TrackingEstimate(
            t=frame.t,
            dt=dt,
            chest=chest,
            head=head,
            knee_left=knee_l,
            knee_right=knee_r,
            head_yaw=frame.head_yaw,
            motion=motion,
            steps=steps,
        )
