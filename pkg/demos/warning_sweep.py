"""
Proximity zones and the indicator ramp
======================================

A person backs toward a wall they cannot see.  As the distance shrinks the
zone tightens, the indicator fades in white, turns yellow, then red, and the
sound alert starts ringing once the wall is in the danger zone behind them.
"""

from saferoam.geometry import Pose2D, default_room
from saferoam.warning import AlertState, WarningConfig, compose_warning_frame

room = default_room()  # 3 m square, walls only
cfg = WarningConfig()
alert = AlertState()

# Walk from the center toward the z=0 wall, facing away from it the whole
# time (yaw 0 looks up +z), sampling every 10 cm.
print(f"{'dist':>5}  {'zone':<11} {'rgba':<26} {'arrow':<6} sound")
for step in range(15):
    z = 1.5 - 0.1 * step
    pose = Pose2D(1.5, z, 0.0)
    frame, alert = compose_warning_frame(pose, room, alert, t=0.0, cfg=cfg)
    wall = min(frame.hazards, key=lambda h: h.distance)
    rgba = tuple(round(c, 2) for c in wall.appearance.rgba)
    arrow = next((a["side"] for a in frame.to_dict()["arrows"] if a["id"] == wall.hazard_id), "-")
    print(
        f"{wall.distance:5.2f}  {wall.zone.wire_name:<11} {str(rgba):<26} "
        f"{arrow:<6} {'on' if frame.sound_on else 'off'}"
    )

# Turning around to look at the wall acknowledges the alert: the ring stops
# and stays stopped while the person remains in the danger zone.
import math

pose = Pose2D(1.5, 0.1, math.pi)  # same spot, now facing the wall
frame, alert = compose_warning_frame(pose, room, alert, t=0.0, cfg=cfg)
print(f"\nafter turning to face the wall: sound {'on' if frame.sound_on else 'off'}")
