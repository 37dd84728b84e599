"""Geometry layer: angles, distances, bearings, rooms."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import Point, Polygon, box as shapely_box

from saferoam.geometry import (
    DegenerateBearingError,
    LimitSegment,
    ObstacleBox,
    Pose2D,
    RoomModel,
    RoomValidationError,
    Vec3,
    bearing_to,
    boundary_segments,
    default_room,
    distance_to_limit,
    distance_to_obstacle,
    hazard_distance,
    heading,
    in_fov,
    nearest_point_on_box,
    nearest_point_on_segment,
    point_in_polygon,
    polygon_centroid,
    polygon_signed_area,
    wrap_angle,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
angles = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


class TestWrapAngle:
    def test_identity_inside_range(self):
        assert wrap_angle(0.0) == 0.0
        assert wrap_angle(1.0) == 1.0
        assert wrap_angle(-3.0) == -3.0

    def test_boundary_is_positive_pi(self):
        assert wrap_angle(math.pi) == pytest.approx(math.pi)
        assert wrap_angle(-math.pi) == pytest.approx(math.pi), (
            "-pi must wrap to +pi: the interval is half-open at the bottom"
        )

    def test_full_turns_collapse(self):
        assert wrap_angle(2 * math.pi) == pytest.approx(0.0)
        assert wrap_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)

    @given(angles)
    def test_result_in_half_open_interval(self, a):
        w = wrap_angle(a)
        assert -math.pi < w <= math.pi

    @given(angles)
    def test_periodic(self, a):
        assert wrap_angle(a + 2 * math.pi) == pytest.approx(wrap_angle(a), abs=1e-9)


class TestHeading:
    def test_zero_yaw_faces_positive_z(self):
        hx, hz = heading(0.0)
        assert (hx, hz) == pytest.approx((0.0, 1.0))

    def test_quarter_turn_is_counter_clockwise(self):
        hx, hz = heading(math.pi / 2)
        assert (hx, hz) == pytest.approx((-1.0, 0.0))

    @given(angles)
    def test_unit_length(self, yaw):
        hx, hz = heading(yaw)
        assert math.hypot(hx, hz) == pytest.approx(1.0)


class TestVecAndPose:
    def test_ground_projection_drops_height(self):
        assert Vec3(1.0, 2.0, 3.0).ground == (1.0, 3.0)

    def test_vector_arithmetic(self):
        assert Vec3(1, 2, 3) + Vec3(4, 5, 6) == Vec3(5, 7, 9)
        assert Vec3(4, 5, 6) - Vec3(1, 2, 3) == Vec3(3, 3, 3)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Vec3(math.nan, 0, 0)
        with pytest.raises(ValueError):
            Pose2D(0, math.inf, 0)

    def test_pose_normalizes_yaw(self):
        assert Pose2D(0, 0, 3 * math.pi).yaw == pytest.approx(math.pi)

    def test_position_property(self):
        assert Pose2D(1.0, 2.0, 0.0).position == (1.0, 2.0)


class TestObstacleBox:
    def test_rejects_inverted_bounds(self):
        with pytest.raises(RoomValidationError):
            ObstacleBox(id="bad", min_x=2, min_z=0, max_x=1, max_z=1, height=1)

    def test_rejects_flat_height(self):
        with pytest.raises(RoomValidationError):
            ObstacleBox(id="bad", min_x=0, min_z=0, max_x=1, max_z=1, height=0)

    def test_contains_is_boundary_inclusive(self):
        box = ObstacleBox(id="b", min_x=0, min_z=0, max_x=1, max_z=1, height=1)
        assert box.contains((0.0, 0.0))
        assert box.contains((0.5, 1.0))
        assert not box.contains((1.0001, 0.5))


class TestDistances:
    box = ObstacleBox(id="b", min_x=1, min_z=1, max_x=2, max_z=2, height=1)

    def test_corner_distance(self):
        assert distance_to_obstacle((0.0, 0.0), self.box) == pytest.approx(math.sqrt(2))

    def test_face_distance(self):
        assert distance_to_obstacle((1.5, 0.0), self.box) == pytest.approx(1.0)

    def test_inside_is_zero(self):
        assert distance_to_obstacle((1.5, 1.5), self.box) == 0.0

    @given(finite, finite)
    def test_matches_shapely_oracle(self, x, z):
        expected = Point(x, z).distance(shapely_box(1, 1, 2, 2))
        assert distance_to_obstacle((x, z), self.box) == pytest.approx(
            expected, abs=1e-9
        )

    def test_nearest_point_clamps_to_box(self):
        assert nearest_point_on_box((0.0, 1.5), self.box) == (1.0, 1.5)
        assert nearest_point_on_box((1.5, 1.5), self.box) == (1.5, 1.5)

    def test_nearest_point_on_segment_endpoints(self):
        seg = LimitSegment(id="s", a=(0, 0), b=(2, 0), normal=(0, 1))
        assert nearest_point_on_segment((-1, 1), seg) == (0, 0)
        assert nearest_point_on_segment((3, 1), seg) == (2, 0)
        assert nearest_point_on_segment((1, 5), seg) == (1, 0)

    def test_limit_distance_signed(self):
        seg = LimitSegment(id="s", a=(0, 0), b=(2, 0), normal=(0, 1))
        assert distance_to_limit((1, 0.5), seg) == pytest.approx(0.5)
        assert distance_to_limit((1, -0.5), seg) == pytest.approx(-0.5), (
            "crossing the wall must flip the sign"
        )

    def test_hazard_distance_dispatches(self):
        seg = LimitSegment(id="s", a=(0, 0), b=(2, 0), normal=(0, 1))
        assert hazard_distance((1, 1), seg) == pytest.approx(1.0)
        assert hazard_distance((1.5, 0.0), self.box) == pytest.approx(1.0)


class TestBearing:
    def test_target_dead_ahead(self):
        assert bearing_to(Pose2D(0, 0, 0), (0.0, 5.0)) == pytest.approx(0.0)

    def test_target_to_the_right_is_negative(self):
        assert bearing_to(Pose2D(0, 0, 0), (1.0, 0.0)) == pytest.approx(-math.pi / 2)

    def test_target_to_the_left_is_positive(self):
        assert bearing_to(Pose2D(0, 0, 0), (-1.0, 0.0)) == pytest.approx(math.pi / 2)

    def test_target_behind(self):
        assert bearing_to(Pose2D(0, 0, 0), (0.0, -1.0)) == pytest.approx(math.pi)

    def test_yaw_rotates_the_frame(self):
        # Facing -x (yaw pi/2); a target at -x is dead ahead.
        assert bearing_to(Pose2D(0, 0, math.pi / 2), (-1.0, 0.0)) == pytest.approx(0.0)

    def test_coincident_target_raises(self):
        with pytest.raises(DegenerateBearingError):
            bearing_to(Pose2D(1, 2, 0), (1.0, 2.0))

    @given(angles, finite, finite)
    def test_bearing_always_normalized(self, yaw, dx, dz):
        if dx == 0 and dz == 0:
            return
        b = bearing_to(Pose2D(0, 0, yaw), (dx, dz))
        assert -math.pi < b <= math.pi


class TestFov:
    def test_boundary_counts_as_inside(self):
        assert in_fov(0.5, 0.5)
        assert in_fov(-0.5, 0.5)
        assert not in_fov(0.5000001, 0.5)

    def test_half_angle_validated(self):
        with pytest.raises(ValueError):
            in_fov(0.0, 0.0)
        with pytest.raises(ValueError):
            in_fov(0.0, math.pi)


SQUARE = [(0.0, 0.0), (3.0, 0.0), (3.0, 3.0), (0.0, 3.0)]


class TestPolygon:
    def test_point_in_square(self):
        assert point_in_polygon((1.5, 1.5), SQUARE)
        assert not point_in_polygon((3.5, 1.5), SQUARE)
        assert not point_in_polygon((-0.1, 0.0), SQUARE)

    @given(
        st.floats(min_value=-1.0, max_value=4.0, allow_nan=False),
        st.floats(min_value=-1.0, max_value=4.0, allow_nan=False),
    )
    @settings(max_examples=200)
    def test_matches_shapely_off_boundary(self, x, z):
        poly = Polygon(SQUARE)
        p = Point(x, z)
        if poly.exterior.distance(p) < 1e-9:
            return  # boundary points are allowed to go either way
        assert point_in_polygon((x, z), SQUARE) == poly.contains(p)

    def test_signed_area_orientation(self):
        assert polygon_signed_area(SQUARE) == pytest.approx(9.0)
        assert polygon_signed_area(list(reversed(SQUARE))) == pytest.approx(-9.0)

    def test_centroid_of_square(self):
        assert polygon_centroid(SQUARE) == pytest.approx((1.5, 1.5))


class TestRoomModel:
    def test_default_room_shape(self):
        room = default_room()
        assert len(room.boundary) == 4
        assert room.centroid == pytest.approx((1.5, 1.5))
        assert room.contains((1.5, 1.5))
        assert not room.contains((3.2, 1.5))

    def test_normals_point_inward(self):
        room = default_room()
        cx, cz = room.centroid
        for seg in room.boundary:
            mx, mz = (seg.a[0] + seg.b[0]) / 2, (seg.a[1] + seg.b[1]) / 2
            inward = (cx - mx) * seg.normal[0] + (cz - mz) * seg.normal[1]
            assert inward > 0, f"{seg.id} normal must face the interior"

    def test_clockwise_boundary_rejected(self):
        with pytest.raises(RoomValidationError):
            boundary_segments(list(reversed(SQUARE)))

    def test_too_few_vertices_rejected(self):
        with pytest.raises(RoomValidationError):
            boundary_segments([(0, 0), (1, 0)])

    def test_open_chain_rejected(self):
        segs = boundary_segments(SQUARE)
        broken = (segs[0], segs[2], segs[3])  # drop one edge
        with pytest.raises(RoomValidationError):
            RoomModel(boundary=broken)

    def test_obstacle_outside_boundary_rejected(self):
        stray = ObstacleBox(id="x", min_x=5, min_z=5, max_x=6, max_z=6, height=1)
        with pytest.raises(RoomValidationError):
            RoomModel(boundary=tuple(boundary_segments(SQUARE)), obstacles=(stray,))

    def test_hazards_lists_limits_then_obstacles(self):
        chair = ObstacleBox(id="chair", min_x=1, min_z=1, max_x=2, max_z=2, height=1)
        room = RoomModel(boundary=tuple(boundary_segments(SQUARE)), obstacles=(chair,))
        ids = [h.id for h in room.hazards]
        assert ids == ["limit-0", "limit-1", "limit-2", "limit-3", "chair"]

    def test_dict_roundtrip(self):
        data = {
            "name": "roundtrip",
            "boundary": SQUARE,
            "obstacles": [
                {"id": "c", "min": [1, 1], "max": [2, 2], "height": 0.9, "label": "chair"}
            ],
        }
        room = RoomModel.from_dict(data)
        again = RoomModel.from_dict(room.to_dict())
        assert again.to_dict() == room.to_dict()
        assert again.obstacles[0].label == "chair"

    def test_from_file(self, tmp_path):
        path = tmp_path / "room.json"
        path.write_text(json.dumps({"name": "f", "boundary": SQUARE}))
        assert RoomModel.from_file(path).name == "f"

    def test_bad_boundary_payload(self):
        with pytest.raises(RoomValidationError):
            RoomModel.from_dict({"boundary": [[0, 0], ["x", 1]]})
