"""
Scoring a session: task time, boundary exits, obstacle hits
===========================================================

A scripted person works through stand / walk / stand / march phases inside a
3 m room with a chair in the corner.  The simulator replays the trace tick by
tick, logs every frame as a JSON line, and closes with the metrics a physical
study would record by hand.
"""

import json
from pathlib import Path

from saferoam import GaitKind, GaitParams, SimConfig, generate_gait, run_trace
from saferoam.geometry import RoomModel
from saferoam.sim import write_frame_log

room = RoomModel.from_file(Path(__file__).resolve().parents[1] / "rooms" / "studio.json")

# The walk leg passes within centimeters of the chair at (2.1, 2.1)-(2.6, 2.6).
params = GaitParams(
    kind=GaitKind.MIXED_SCRIPT,
    path=((0.7, 0.7), (2.0, 2.3), (0.9, 2.4)),
    ground_speed=1.0,
    noise_sigma=0.01,
    duration=20.0,
    seed=4,
)
trace = generate_gait(params)
result = run_trace(SimConfig(room=room), trace)

log_path = Path("studio_run.jsonl")
write_frame_log(log_path, SimConfig(room=room), result)
print(f"wrote {len(result.records)} frames to {log_path}")
print(json.dumps(result.metrics.to_dict(), indent=2))

# Every frame carries the warning layer's view; pull out the moments the
# chair entered the danger zone.
danger_ticks = [
    r["tick"]
    for r in result.records
    if any(h["id"] == "chair" and h["zone"] == "danger" for h in r["warning"]["hazards"])
]
if danger_ticks:
    t0, t1 = danger_ticks[0] / 30.0, danger_ticks[-1] / 30.0
    print(f"chair in the danger zone from t={t0:.2f}s to t={t1:.2f}s")
else:
    print("chair never reached the danger zone")
