// Payloads captured verbatim from a session host running rooms/studio.json.
// Tests mutate copies through the variant helpers; the raw strings stay
// untouched so parsing is always exercised end to end.

export const HELLO_RAW = `{"type": "hello", "session": "session-1", "room": {"name": "studio-3m-chair", "boundary": [[0.0, 0.0], [3.0, 0.0], [3.0, 3.0], [0.0, 3.0]], "obstacles": [{"id": "chair", "min": [2.1, 2.1], "max": [2.6, 2.6], "height": 0.9, "label": "desk chair"}]}, "tick": 0.03333333333333333, "config": {"locomotion": {"v_t": 0.8, "exit_margin": 0.1, "enter_frames": 3, "exit_dwell": 0.3, "wip_gain": 0.5, "wip_reference_height": 0.25, "wip_max_speed": 2.0}, "zones": {"danger_limit": 0.4, "warning_limit": 0.8, "prewarning_limit": 1.2, "step_length": 0.75, "safety_margin": 0.2}, "fov_half_angle": 0.7853981633974483, "collision_radius": 0.2, "tick": 0.03333333333333333}}`;

export const FRAME_RAW = `{"type": "frame", "session": "session-1", "tick": 0, "real": {"x": 1.500628651105467, "z": 1.5032021132522164, "yaw": 0.0}, "avatar": {"x": 1.500628651105467, "y": 0.0, "z": 1.5032021132522164, "yaw": 0.0}, "mode": "stationary", "v_wip": 0.0, "warning": {"t": 0.03333333333333333, "hazards": [{"id": "limit-0", "kind": "limit", "distance": 1.5032021132522164, "zone": "normal", "bearing": 3.141592653589793, "in_fov": false, "rgba": [1.0, 1.0, 1.0, 0.0]}, {"id": "limit-1", "kind": "limit", "distance": 1.499371348894533, "zone": "normal", "bearing": -1.5707963267948966, "in_fov": false, "rgba": [1.0, 1.0, 1.0, 0.0]}, {"id": "limit-2", "kind": "limit", "distance": 1.4967978867477836, "zone": "normal", "bearing": 0.0, "in_fov": true, "rgba": [1.0, 1.0, 1.0, 0.0]}, {"id": "limit-3", "kind": "limit", "distance": 1.500628651105467, "zone": "normal", "bearing": 1.5707963267948966, "in_fov": false, "rgba": [1.0, 1.0, 1.0, 0.0]}, {"id": "chair", "kind": "obstacle", "distance": 0.845821335449912, "zone": "pre_warning", "bearing": -0.7875495798522141, "in_fov": false, "rgba": [1.0, 1.0, 0.1145533386247799, 0.44272333068761005]}], "arrows": [{"id": "chair", "side": "right"}], "sound_on": false}, "metrics": {"task_time": 0.0, "total_exits": 0, "total_hits": 0, "runs": 1, "runs_with_exit": 0, "runs_with_hit": 0, "mode_histogram": {"stationary": 1, "natural_walking": 0, "walking_in_place": 0}}}`;

export function frameVariant(mutate: (data: any) => void): string {
  const data = JSON.parse(FRAME_RAW);
  mutate(data);
  return JSON.stringify(data);
}

export function helloVariant(mutate: (data: any) => void): string {
  const data = JSON.parse(HELLO_RAW);
  mutate(data);
  return JSON.stringify(data);
}
