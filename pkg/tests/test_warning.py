"""Warning layer: zones, indicator ramps, arrows, sound alerts, frame composition."""

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from saferoam.geometry import ObstacleBox, Pose2D, RoomModel, boundary_segments, default_room
from saferoam.warning import (
    AlertState,
    GAZE_ACK_CONE,
    HazardStatus,
    IndicatorAppearance,
    WarningConfig,
    Zone,
    ZoneConfig,
    classify_zone,
    compose_warning_frame,
    evaluate_hazard,
    indicator_appearance,
    offscreen_arrow,
    sound_alert_step,
)

distances = st.floats(min_value=-2.0, max_value=5.0, allow_nan=False)


class TestClassifyZone:
    @pytest.mark.parametrize(
        "distance,zone",
        [
            (-0.5, Zone.DANGER),  # already past a limit: fail-safe
            (0.0, Zone.DANGER),
            (0.39999, Zone.DANGER),
            (0.40, Zone.WARNING),  # boundaries are lower-inclusive
            (0.79999, Zone.WARNING),
            (0.80, Zone.PRE_WARNING),
            (1.19999, Zone.PRE_WARNING),
            (1.20, Zone.NORMAL),
            (50.0, Zone.NORMAL),
        ],
    )
    def test_boundaries(self, distance, zone):
        assert classify_zone(distance) is zone

    @given(distances, distances)
    def test_monotone_in_distance(self, d1, d2):
        if d1 > d2:
            d1, d2 = d2, d1
        assert classify_zone(d1) <= classify_zone(d2)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ZoneConfig(danger_limit=1.0, warning_limit=0.5)

    def test_config_dict_roundtrip(self):
        cfg = ZoneConfig(danger_limit=0.3, warning_limit=0.6, prewarning_limit=1.0)
        assert ZoneConfig.from_dict(cfg.to_dict()) == cfg

    def test_unknown_config_field_rejected(self):
        with pytest.raises(ValueError, match="unknown"):
            ZoneConfig.from_dict({"danger_limit": 0.4, "bogus": 1.0})


class TestIndicatorAppearance:
    def test_normal_is_invisible(self):
        app = indicator_appearance(1.5)
        assert not app.visible
        assert app.rgba[3] == 0.0

    def test_prewarning_midpoint(self):
        # Halfway from white/0.0 (1.2 m) to yellow/0.5 (0.8 m).
        app = indicator_appearance(1.0)
        assert app.visible
        assert app.rgba == pytest.approx((1.0, 1.0, 0.5, 0.25))

    def test_warning_midpoint(self):
        # Halfway from yellow/0.5 (0.8 m) to red/0.9 (0.4 m).
        app = indicator_appearance(0.6)
        assert app.rgba == pytest.approx((1.0, 0.5, 0.0, 0.7))

    def test_danger_is_constant_red(self):
        for d in (0.39, 0.2, 0.0, -1.0):
            assert indicator_appearance(d).rgba == (1.0, 0.0, 0.0, 0.9)

    def test_continuous_at_zone_boundaries(self):
        for boundary in (0.40, 0.80, 1.20):
            lo = indicator_appearance(boundary - 1e-7).rgba
            hi = indicator_appearance(boundary + 1e-7).rgba
            assert lo == pytest.approx(hi, abs=1e-5), (
                f"indicator must be continuous across {boundary} m"
            )

    def test_alpha_non_increasing_with_distance(self):
        alphas = [indicator_appearance(d / 1000).rgba[3] for d in range(0, 2001)]
        for a, b in zip(alphas, alphas[1:]):
            assert b <= a + 1e-12

    @given(distances)
    def test_channels_in_unit_range(self, d):
        for c in indicator_appearance(d).rgba:
            assert -1e-12 <= c <= 1.0 + 1e-12

    @given(distances)
    def test_visible_iff_not_normal(self, d):
        app = indicator_appearance(d)
        assert app.visible == (classify_zone(d) is not Zone.NORMAL)


def status(
    zone=Zone.WARNING,
    bearing=0.0,
    fov=True,
    hid="h",
    kind="obstacle",
    distance=None,
):
    if distance is None:
        lookup = {
            Zone.DANGER: 0.2,
            Zone.WARNING: 0.6,
            Zone.PRE_WARNING: 1.0,
            Zone.NORMAL: 2.0,
        }
        distance = lookup[zone]
    return HazardStatus(
        hazard_id=hid,
        kind=kind,
        distance=distance,
        zone=zone,
        bearing=bearing,
        in_fov=fov,
        appearance=indicator_appearance(distance),
    )


class TestOffscreenArrow:
    def test_right_hazard_out_of_view(self):
        s = status(zone=Zone.WARNING, bearing=-math.pi / 2, fov=False)
        assert offscreen_arrow(s) == "right"

    def test_left_hazard_out_of_view(self):
        s = status(zone=Zone.WARNING, bearing=math.pi / 2, fov=False)
        assert offscreen_arrow(s) == "left"

    def test_behind_ties_to_right(self):
        s = status(zone=Zone.DANGER, bearing=math.pi, fov=False)
        assert offscreen_arrow(s) == "right"

    def test_in_view_no_arrow(self):
        assert offscreen_arrow(status(zone=Zone.DANGER, bearing=0.1, fov=True)) is None

    def test_normal_zone_no_arrow(self):
        assert offscreen_arrow(status(zone=Zone.NORMAL, bearing=2.0, fov=False)) is None


class TestSoundAlert:
    def test_rings_on_danger_out_of_view(self):
        alert = sound_alert_step(AlertState(), [status(zone=Zone.DANGER, bearing=math.pi, fov=False)])
        assert alert.ringing == {"h"}

    def test_silent_when_in_view(self):
        alert = sound_alert_step(AlertState(), [status(zone=Zone.DANGER, bearing=0.5, fov=True)])
        assert alert.ringing == frozenset()

    def test_keeps_ringing_until_gaze_or_exit(self):
        ringing = AlertState(ringing=frozenset({"h"}))
        # Hazard swings into view but is not gazed at directly: keep ringing.
        alert = sound_alert_step(ringing, [status(zone=Zone.DANGER, bearing=0.5, fov=True)])
        assert alert.ringing == {"h"}

    def test_gaze_silences_and_acknowledges(self):
        ringing = AlertState(ringing=frozenset({"h"}))
        alert = sound_alert_step(ringing, [status(zone=Zone.DANGER, bearing=0.1, fov=True)])
        assert alert.ringing == frozenset()
        assert alert.acknowledged == {"h"}

    def test_gaze_cone_boundary(self):
        ringing = AlertState(ringing=frozenset({"h"}))
        exactly = sound_alert_step(
            ringing, [status(zone=Zone.DANGER, bearing=GAZE_ACK_CONE, fov=True)]
        )
        assert exactly.ringing == frozenset(), "the cone edge counts as a gaze"

    def test_leaving_danger_stops_and_clears_ack(self):
        state = AlertState(ringing=frozenset({"h"}), acknowledged=frozenset({"a"}))
        alert = sound_alert_step(
            state,
            [status(zone=Zone.WARNING, hid="h"), status(zone=Zone.WARNING, hid="a")],
        )
        assert alert.ringing == frozenset()
        assert alert.acknowledged == frozenset()

    def test_acknowledged_does_not_re_ring_inside_danger(self):
        acked = AlertState(acknowledged=frozenset({"h"}))
        alert = sound_alert_step(acked, [status(zone=Zone.DANGER, bearing=math.pi, fov=False)])
        assert alert.ringing == frozenset(), "gaze acknowledgment holds within Danger"
        assert alert.acknowledged == {"h"}

    def test_re_entry_after_exit_rings_again(self):
        acked = AlertState(acknowledged=frozenset({"h"}))
        out = sound_alert_step(acked, [status(zone=Zone.NORMAL)])
        assert out.acknowledged == frozenset()
        again = sound_alert_step(out, [status(zone=Zone.DANGER, bearing=math.pi, fov=False)])
        assert again.ringing == {"h"}

    def test_truth_table_exhaustive(self):
        # Every combination of zone class, FOV, prior ringing, prior ack,
        # and gaze, checked against the three rules.
        zones = [Zone.DANGER, Zone.WARNING, Zone.NORMAL]
        for zone, fov, was_ringing, was_acked, gazed in itertools.product(
            zones, [False, True], [False, True], [False, True], [False, True]
        ):
            if gazed and not fov:
                continue  # a gazed-at hazard is necessarily in view
            bearing = 0.0 if gazed else (0.6 if fov else math.pi)
            prior = AlertState(
                ringing=frozenset({"h"}) if was_ringing else frozenset(),
                acknowledged=frozenset({"h"}) if was_acked else frozenset(),
            )
            out = sound_alert_step(prior, [status(zone=zone, bearing=bearing, fov=fov)])
            if zone is not Zone.DANGER:
                expect_ringing = False  # rule: stop on leaving Danger
                expect_acked = False
            elif gazed or was_acked:
                expect_ringing = False  # rule: stop on direct gaze; ack holds
                expect_acked = True
            else:
                # rule: ring on Danger out of view; persist once ringing
                expect_ringing = was_ringing or not fov
                expect_acked = False
            label = f"zone={zone.name} fov={fov} ring={was_ringing} ack={was_acked} gaze={gazed}"
            assert (out.ringing == {"h"}) == expect_ringing, label
            assert (out.acknowledged == {"h"}) == expect_acked, label


def room_with_chair():
    square = [(0.0, 0.0), (3.0, 0.0), (3.0, 3.0), (0.0, 3.0)]
    chair = ObstacleBox(id="chair", min_x=2.1, min_z=2.1, max_x=2.6, max_z=2.6, height=0.9)
    return RoomModel(boundary=tuple(boundary_segments(square)), obstacles=(chair,))


class TestEvaluateHazard:
    def test_obstacle_fields(self):
        room = room_with_chair()
        pose = Pose2D(1.5, 2.35, math.pi / 2 * -1)  # facing +x toward the chair
        s = evaluate_hazard(pose, room.obstacles[0])
        assert s.kind == "obstacle"
        assert s.distance == pytest.approx(0.6)
        assert s.zone is Zone.WARNING
        assert s.bearing == pytest.approx(0.0, abs=1e-9)
        assert s.in_fov

    def test_limit_fields(self):
        room = default_room()
        pose = Pose2D(1.5, 0.3, math.pi)  # near the z=0 wall, facing -z
        s = evaluate_hazard(pose, room.boundary[0])
        assert s.kind == "limit"
        assert s.distance == pytest.approx(0.3)
        assert s.zone is Zone.DANGER

    def test_standing_on_hazard_is_dead_ahead(self):
        room = room_with_chair()
        pose = Pose2D(2.3, 2.3, 0.7)  # inside the chair footprint
        s = evaluate_hazard(pose, room.obstacles[0])
        assert s.distance == 0.0
        assert s.bearing == 0.0
        assert s.zone is Zone.DANGER

    def test_fov_config_validated(self):
        with pytest.raises(ValueError):
            WarningConfig(fov_half_angle=0.0)


class TestComposeWarningFrame:
    def test_frame_covers_every_hazard(self):
        room = room_with_chair()
        frame, _ = compose_warning_frame(Pose2D(1.5, 1.5, 0.0), room, AlertState(), 1.0)
        assert [h.hazard_id for h in frame.hazards] == [
            "limit-0",
            "limit-1",
            "limit-2",
            "limit-3",
            "chair",
        ]
        assert frame.t == 1.0

    def test_sound_flag_mirrors_ringing(self):
        room = default_room()
        # Back right up to the z=0 wall while facing away from it.
        frame, alert = compose_warning_frame(Pose2D(1.5, 0.2, 0.0), room, AlertState(), 0.0)
        assert alert.ringing == {"limit-0"}
        assert frame.sound_on

    def test_arrows_only_for_unseen_near_hazards(self):
        room = default_room()
        frame, _ = compose_warning_frame(Pose2D(1.5, 0.2, 0.0), room, AlertState(), 0.0)
        sides = dict(frame.arrows)
        assert "limit-0" in sides, "the wall behind is close and out of view"
        assert sides["limit-0"] == "right", "dead-behind ties break to the right"
        assert "limit-2" not in sides, "the far wall is in view"

    def test_wire_schema(self):
        room = room_with_chair()
        frame, _ = compose_warning_frame(Pose2D(2.3, 1.5, 0.0), room, AlertState(), 2.5)
        data = frame.to_dict()
        assert set(data) == {"t", "hazards", "arrows", "sound_on"}
        hazard = data["hazards"][0]
        assert set(hazard) == {"id", "kind", "distance", "zone", "bearing", "in_fov", "rgba"}
        assert isinstance(hazard["rgba"], list) and len(hazard["rgba"]) == 4
        for arrow in data["arrows"]:
            assert set(arrow) == {"id", "side"}
            assert arrow["side"] in ("left", "right")

    def test_centre_of_default_room_is_all_normal(self):
        frame, alert = compose_warning_frame(
            Pose2D(1.5, 1.5, 0.0), default_room(), AlertState(), 0.0
        )
        assert all(h.zone is Zone.NORMAL for h in frame.hazards)
        assert frame.arrows == ()
        assert not frame.sound_on
        assert alert == AlertState()
