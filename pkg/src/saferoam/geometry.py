"""Room geometry: tracking-area limits, obstacle footprints, distances and bearings.

All proximity math happens in 2D on the ground plane (the x-z plane; y is up).
Obstacle height is carried along for display only.  Every function here is pure
and safe to call concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

Point2 = tuple[float, float]

_TWO_PI = 2.0 * math.pi


class RoomValidationError(ValueError):
    """Raised when a room description violates a structural invariant."""


class DegenerateBearingError(ValueError):
    """Raised when a bearing is requested toward the observer's own position."""


def wrap_angle(angle: float) -> float:
    """Normalize an angle to the half-open interval (-pi, pi]."""
    return math.pi - (math.pi - angle) % _TWO_PI


def heading(yaw: float) -> Point2:
    """Unit ground-plane heading for a yaw angle.

    Yaw 0 points along +z; yaw increases counter-clockwise viewed from above,
    so heading(yaw) = (-sin(yaw), cos(yaw)).
    """
    return (-math.sin(yaw), math.cos(yaw))


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Vec3:
    """A 3D point/vector in meters. y is the vertical axis."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        _require_finite("Vec3 component", self.x, self.y, self.z)

    @property
    def ground(self) -> Point2:
        """Projection onto the ground plane as (x, z)."""
        return (self.x, self.z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)


@dataclass(frozen=True)
class Pose2D:
    """Ground-plane position plus gaze heading.

    yaw is stored normalized to (-pi, pi], 0 along +z, positive
    counter-clockwise viewed from above.
    """

    x: float
    z: float
    yaw: float

    def __post_init__(self):
        _require_finite("Pose2D field", self.x, self.z, self.yaw)
        object.__setattr__(self, "yaw", wrap_angle(self.yaw))

    @property
    def position(self) -> Point2:
        return (self.x, self.z)


@dataclass(frozen=True)
class ObstacleBox:
    """Axis-aligned obstacle footprint on the ground plane, with a display height."""

    id: str
    min_x: float
    min_z: float
    max_x: float
    max_z: float
    height: float
    label: str = ""

    def __post_init__(self):
        _require_finite(
            "ObstacleBox bound", self.min_x, self.min_z, self.max_x, self.max_z
        )
        if not (self.min_x < self.max_x and self.min_z < self.max_z):
            raise RoomValidationError(
                f"obstacle {self.id!r}: footprint must satisfy min < max on both axes"
            )
        if not self.height > 0:
            raise RoomValidationError(f"obstacle {self.id!r}: height must be > 0")

    def contains(self, p: Point2) -> bool:
        return self.min_x <= p[0] <= self.max_x and self.min_z <= p[1] <= self.max_z

    @property
    def corners(self) -> list[Point2]:
        return [
            (self.min_x, self.min_z),
            (self.max_x, self.min_z),
            (self.max_x, self.max_z),
            (self.min_x, self.max_z),
        ]


@dataclass(frozen=True)
class LimitSegment:
    """One wall of the tracking-area boundary.

    normal is the unit 2D vector pointing toward the tracking-area interior;
    signed distances are positive on that side.
    """

    id: str
    a: Point2
    b: Point2
    normal: Point2

    def __post_init__(self):
        _require_finite("LimitSegment endpoint", *self.a, *self.b)
        if self.a == self.b:
            raise RoomValidationError(f"limit {self.id!r}: endpoints must be distinct")
        n = math.hypot(*self.normal)
        if abs(n - 1.0) > 1e-9:
            raise RoomValidationError(f"limit {self.id!r}: normal must have unit length")


Hazard = Union[ObstacleBox, LimitSegment]


def distance_to_obstacle(p: Point2, box: ObstacleBox) -> float:
    """Euclidean ground-plane distance from p to the footprint; 0 inside."""
    dx = max(box.min_x - p[0], 0.0, p[0] - box.max_x)
    dz = max(box.min_z - p[1], 0.0, p[1] - box.max_z)
    return math.hypot(dx, dz)


def nearest_point_on_box(p: Point2, box: ObstacleBox) -> Point2:
    """Closest footprint point to p; p itself when inside."""
    return (
        min(max(p[0], box.min_x), box.max_x),
        min(max(p[1], box.min_z), box.max_z),
    )


def nearest_point_on_segment(p: Point2, seg: LimitSegment) -> Point2:
    """Projection of p onto the segment, clamped to its endpoints."""
    ax, az = seg.a
    bx, bz = seg.b
    dx, dz = bx - ax, bz - az
    t = ((p[0] - ax) * dx + (p[1] - az) * dz) / (dx * dx + dz * dz)
    t = min(max(t, 0.0), 1.0)
    return (ax + t * dx, az + t * dz)


def distance_to_limit(p: Point2, seg: LimitSegment) -> float:
    """Signed distance from p to the limit segment.

    Magnitude is the distance to the nearest segment point; the sign is
    positive on the inside-normal side (safe) and negative past the wall.
    """
    q = nearest_point_on_segment(p, seg)
    d = math.hypot(p[0] - q[0], p[1] - q[1])
    side = (p[0] - seg.a[0]) * seg.normal[0] + (p[1] - seg.a[1]) * seg.normal[1]
    return d if side >= 0 else -d


def nearest_hazard_point(p: Point2, hazard: Hazard) -> Point2:
    """Closest point of the hazard geometry to p."""
    if isinstance(hazard, ObstacleBox):
        return nearest_point_on_box(p, hazard)
    return nearest_point_on_segment(p, hazard)


def hazard_distance(p: Point2, hazard: Hazard) -> float:
    """Unified distance: Euclidean for obstacles, signed for limits."""
    if isinstance(hazard, ObstacleBox):
        return distance_to_obstacle(p, hazard)
    return distance_to_limit(p, hazard)


def bearing_to(pose: Pose2D, target: Point2) -> float:
    """Signed angle in (-pi, pi] from the gaze heading to the target direction.

    Positive bearings are to the person's left under the yaw convention
    (yaw counter-clockwise from above).

    Raises:
        DegenerateBearingError: if target coincides with the pose position.
    """
    dx = target[0] - pose.x
    dz = target[1] - pose.z
    if dx == 0.0 and dz == 0.0:
        raise DegenerateBearingError("bearing undefined: target coincides with position")
    # Direction angle under the same convention as yaw: atan2(-dx, dz).
    return wrap_angle(math.atan2(-dx, dz) - pose.yaw)


def in_fov(bearing: float, half_angle: float) -> bool:
    """True iff |bearing| <= half_angle (boundary counts as inside)."""
    if not 0.0 < half_angle < math.pi:
        raise ValueError(f"half_angle must be in (0, pi), got {half_angle}")
    return abs(bearing) <= half_angle


def point_in_polygon(p: Point2, vertices: Sequence[Point2]) -> bool:
    """Even-odd crossing test for a simple polygon. Edge points may go either way."""
    x, z = p
    inside = False
    j = len(vertices) - 1
    for i in range(len(vertices)):
        xi, zi = vertices[i]
        xj, zj = vertices[j]
        if (zi > z) != (zj > z) and x < (xj - xi) * (z - zi) / (zj - zi) + xi:
            inside = not inside
        j = i
    return inside


def polygon_signed_area(vertices: Sequence[Point2]) -> float:
    """Shoelace area; positive for counter-clockwise order in the (x, z) plane."""
    area = 0.0
    j = len(vertices) - 1
    for i in range(len(vertices)):
        area += vertices[j][0] * vertices[i][1] - vertices[i][0] * vertices[j][1]
        j = i
    return area / 2.0


def polygon_centroid(vertices: Sequence[Point2]) -> Point2:
    """Area centroid of a simple polygon."""
    area = polygon_signed_area(vertices)
    cx = cz = 0.0
    j = len(vertices) - 1
    for i in range(len(vertices)):
        cross = vertices[j][0] * vertices[i][1] - vertices[i][0] * vertices[j][1]
        cx += (vertices[j][0] + vertices[i][0]) * cross
        cz += (vertices[j][1] + vertices[i][1]) * cross
        j = i
    return (cx / (6.0 * area), cz / (6.0 * area))


@dataclass(frozen=True)
class RoomModel:
    """Tracking-area boundary plus the obstacles inside it."""

    boundary: tuple[LimitSegment, ...]
    obstacles: tuple[ObstacleBox, ...] = ()
    name: str = ""

    def __post_init__(self):
        if len(self.boundary) < 3:
            raise RoomValidationError("boundary needs at least 3 segments")
        n = len(self.boundary)
        for i, seg in enumerate(self.boundary):
            nxt = self.boundary[(i + 1) % n]
            if seg.b != nxt.a:
                raise RoomValidationError(
                    f"boundary is not a closed chain: segment {seg.id!r} ends at "
                    f"{seg.b}, next starts at {nxt.a}"
                )
        verts = self.vertices
        if polygon_signed_area(verts) <= 0:
            raise RoomValidationError("boundary must be counter-clockwise")
        for box in self.obstacles:
            for corner in box.corners:
                if not point_in_polygon(corner, verts) and not _on_boundary(
                    corner, verts
                ):
                    raise RoomValidationError(
                        f"obstacle {box.id!r} lies outside the boundary polygon"
                    )

    @property
    def vertices(self) -> list[Point2]:
        return [seg.a for seg in self.boundary]

    @property
    def hazards(self) -> list[Hazard]:
        return list(self.boundary) + list(self.obstacles)

    @property
    def centroid(self) -> Point2:
        return polygon_centroid(self.vertices)

    def contains(self, p: Point2) -> bool:
        return point_in_polygon(p, self.vertices)

    @classmethod
    def from_dict(cls, data: dict) -> "RoomModel":
        """Build a room from the JSON wire format.

        Expected shape::

            { "name": str,
              "boundary": [[x, z], ...],        # counter-clockwise
              "obstacles": [{ "id", "min": [x, z], "max": [x, z],
                              "height", "label" }] }

        Boundary vertices become LimitSegments with inward normals.
        """
        try:
            raw_verts = [(float(x), float(z)) for x, z in data["boundary"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise RoomValidationError(f"bad boundary vertex list: {exc}") from exc
        boundary = boundary_segments(raw_verts)
        obstacles = []
        for raw in data.get("obstacles", []):
            try:
                obstacles.append(
                    ObstacleBox(
                        id=str(raw["id"]),
                        min_x=float(raw["min"][0]),
                        min_z=float(raw["min"][1]),
                        max_x=float(raw["max"][0]),
                        max_z=float(raw["max"][1]),
                        height=float(raw["height"]),
                        label=str(raw.get("label", "")),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise RoomValidationError(f"bad obstacle entry {raw!r}: {exc}") from exc
        return cls(
            boundary=tuple(boundary),
            obstacles=tuple(obstacles),
            name=str(data.get("name", "")),
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "RoomModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "boundary": [[seg.a[0], seg.a[1]] for seg in self.boundary],
            "obstacles": [
                {
                    "id": box.id,
                    "min": [box.min_x, box.min_z],
                    "max": [box.max_x, box.max_z],
                    "height": box.height,
                    "label": box.label,
                }
                for box in self.obstacles
            ],
        }


def boundary_segments(vertices: Sequence[Point2]) -> list[LimitSegment]:
    """Turn a counter-clockwise vertex loop into limit segments with inward normals."""
    if len(vertices) < 3:
        raise RoomValidationError("boundary needs at least 3 vertices")
    if polygon_signed_area(vertices) <= 0:
        raise RoomValidationError("boundary must be counter-clockwise")
    segments = []
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        dx, dz = b[0] - a[0], b[1] - a[1]
        length = math.hypot(dx, dz)
        if length == 0:
            raise RoomValidationError(f"boundary has a zero-length edge at vertex {i}")
        # Interior lies to the left of each CCW-directed edge.
        normal = (-dz / length, dx / length)
        segments.append(LimitSegment(id=f"limit-{i}", a=a, b=b, normal=normal))
    return segments


def _on_boundary(p: Point2, vertices: Sequence[Point2], tol: float = 1e-9) -> bool:
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        seg = LimitSegment(id="t", a=a, b=b, normal=(1.0, 0.0))
        q = nearest_point_on_segment(p, seg)
        if math.hypot(p[0] - q[0], p[1] - q[1]) <= tol:
            return True
    return False


def default_room(size: float = 3.0, name: str = "default") -> RoomModel:
    """The stock square tracking area (3 m x 3 m unless told otherwise)."""
    s = float(size)
    return RoomModel(
        boundary=tuple(boundary_segments([(0.0, 0.0), (s, 0.0), (s, s), (0.0, s)])),
        name=name,
    )
