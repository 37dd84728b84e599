"""
Calibrating the walking-speed threshold
=======================================

The stationary/walking decision hinges on one number: how fast can the chest
drift while the person is only stepping in place?  We record chest speeds
during deliberate in-place stepping, summarize them with a Tukey boxplot,
and take the upper outlier fence (rounded up to a 0.05 m/s grid) as the
walking threshold.
"""

import numpy as np

from saferoam import GaitKind, GaitParams, boxplot_fences, calibrate_threshold, generate_gait
from saferoam.locomotion import LocomotionConfig
from saferoam.tracking import TrackingPipeline

# Synthesize a noisy in-place march and measure its chest speed the same way
# the live classifier does.
params = GaitParams(
    kind=GaitKind.WALK_IN_PLACE, path=((0.0, 0.0),), noise_sigma=0.02,
    duration=30.0, seed=11,
)
tracker = TrackingPipeline()
speeds = []
for frame in generate_gait(params):
    estimate = tracker.feed(frame)
    if estimate.t >= 2.0:  # let the filter and speed window settle
        speeds.append(estimate.motion.chest_speed_h)

fences = boxplot_fences(speeds)
v_t = calibrate_threshold(speeds)

print(f"samples: {len(speeds)} chest-speed readings")
print(f"quartiles: q1={fences.q1:.3f}  median={fences.median:.3f}  q3={fences.q3:.3f}")
print(f"upper fence: {fences.upper_fence:.3f} m/s")
print(f"calibrated threshold: {v_t:.2f} m/s")
print(f"default shipped threshold: {LocomotionConfig().v_t:.2f} m/s")

# The fence tracks the person: a twitchier marcher earns a higher threshold.
noisier = np.multiply(speeds, 1.5)
print(f"same person, 1.5x drift: threshold {calibrate_threshold(noisier):.2f} m/s")
