// Wire contract for the session host: JSON text messages in both directions.
// The server speaks first with a hello, then pushes one frame per tick;
// the client sends input messages and nothing else.
//
// Indicator colors arrive as rgba floats in [0, 1]. They are kept by
// reference from JSON.parse and never copied or rescaled, so whatever the
// view displays stays bit-equal to the payload.

export type Zone = "normal" | "pre_warning" | "warning" | "danger";
export type ArrowSide = "left" | "right";
export type Rgba = [number, number, number, number];

export interface RoomObstacle {
  id: string;
  min: [number, number];
  max: [number, number];
  height: number;
  label: string;
}

export interface RoomInfo {
  name: string;
  boundary: [number, number][];
  obstacles: RoomObstacle[];
}

export interface HelloMessage {
  type: "hello";
  session: string;
  room: RoomInfo;
  tick: number; // seconds per simulation tick, not an index
  config: Record<string, unknown>;
}

export interface HazardStatus {
  id: string;
  kind: string; // "limit" for boundary edges, "obstacle" for boxes
  distance: number;
  zone: Zone;
  bearing: number;
  in_fov: boolean;
  rgba: Rgba;
}

export interface EdgeArrow {
  id: string;
  side: ArrowSide;
}

export interface WarningView {
  t: number;
  hazards: HazardStatus[];
  arrows: EdgeArrow[];
  sound_on: boolean;
}

export interface StateFrameMessage {
  type: "frame";
  session: string;
  tick: number; // tick index since session start
  real: { x: number; z: number; yaw: number };
  avatar: { x: number; y: number; z: number; yaw: number };
  mode: string;
  v_wip: number;
  warning: WarningView;
  metrics: Record<string, unknown>;
}

export type ServerMessage = HelloMessage | StateFrameMessage;

export class ProtocolError extends Error {}

const ZONES: ReadonlySet<string> = new Set([
  "normal",
  "pre_warning",
  "warning",
  "danger",
]);

function fail(reason: string): never {
  throw new ProtocolError(reason);
}

function asObject(value: unknown, label: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    fail(`${label} must be an object`);
  }
  return value as Record<string, unknown>;
}

function asNumber(value: unknown, label: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    fail(`${label} must be a finite number`);
  }
  return value;
}

function asString(value: unknown, label: string): string {
  if (typeof value !== "string") fail(`${label} must be a string`);
  return value;
}

function asBoolean(value: unknown, label: string): boolean {
  if (typeof value !== "boolean") fail(`${label} must be a boolean`);
  return value;
}

function asPoint(value: unknown, label: string): [number, number] {
  if (!Array.isArray(value) || value.length !== 2) {
    fail(`${label} must be an [x, z] pair`);
  }
  return [asNumber(value[0], label), asNumber(value[1], label)];
}

function asRgba(value: unknown, label: string): Rgba {
  if (!Array.isArray(value) || value.length !== 4) {
    fail(`${label} must have four channels`);
  }
  for (let i = 0; i < 4; i++) asNumber(value[i], `${label}[${i}]`);
  return value as Rgba; // same array instance, not a copy
}

function parseObstacle(value: unknown, label: string): RoomObstacle {
  const data = asObject(value, label);
  return {
    id: asString(data.id, `${label}.id`),
    min: asPoint(data.min, `${label}.min`),
    max: asPoint(data.max, `${label}.max`),
    height: asNumber(data.height, `${label}.height`),
    label: asString(data.label ?? "", `${label}.label`),
  };
}

function parseRoom(value: unknown): RoomInfo {
  const data = asObject(value, "room");
  if (!Array.isArray(data.boundary) || data.boundary.length < 3) {
    fail("room.boundary needs at least three vertices");
  }
  const obstacles = Array.isArray(data.obstacles) ? data.obstacles : [];
  return {
    name: asString(data.name ?? "", "room.name"),
    boundary: data.boundary.map((v, i) => asPoint(v, `room.boundary[${i}]`)),
    obstacles: obstacles.map((o, i) => parseObstacle(o, `room.obstacles[${i}]`)),
  };
}

function parseHazard(value: unknown, label: string): HazardStatus {
  const data = asObject(value, label);
  const zone = asString(data.zone, `${label}.zone`);
  if (!ZONES.has(zone)) fail(`${label}.zone is unknown: ${zone}`);
  return {
    id: asString(data.id, `${label}.id`),
    kind: asString(data.kind, `${label}.kind`),
    distance: asNumber(data.distance, `${label}.distance`),
    zone: zone as Zone,
    bearing: asNumber(data.bearing, `${label}.bearing`),
    in_fov: asBoolean(data.in_fov, `${label}.in_fov`),
    rgba: asRgba(data.rgba, `${label}.rgba`),
  };
}

function parseArrow(value: unknown, label: string): EdgeArrow {
  const data = asObject(value, label);
  const side = asString(data.side, `${label}.side`);
  if (side !== "left" && side !== "right") {
    fail(`${label}.side must be left or right`);
  }
  return { id: asString(data.id, `${label}.id`), side };
}

function parseWarning(value: unknown): WarningView {
  const data = asObject(value, "warning");
  if (!Array.isArray(data.hazards)) fail("warning.hazards must be an array");
  if (!Array.isArray(data.arrows)) fail("warning.arrows must be an array");
  return {
    t: asNumber(data.t, "warning.t"),
    hazards: data.hazards.map((h, i) => parseHazard(h, `warning.hazards[${i}]`)),
    arrows: data.arrows.map((a, i) => parseArrow(a, `warning.arrows[${i}]`)),
    sound_on: asBoolean(data.sound_on, "warning.sound_on"),
  };
}

function parseHello(data: Record<string, unknown>): HelloMessage {
  return {
    type: "hello",
    session: asString(data.session, "hello.session"),
    room: parseRoom(data.room),
    tick: asNumber(data.tick, "hello.tick"),
    config: asObject(data.config ?? {}, "hello.config"),
  };
}

function parseFrame(data: Record<string, unknown>): StateFrameMessage {
  const real = asObject(data.real, "frame.real");
  const avatar = asObject(data.avatar, "frame.avatar");
  return {
    type: "frame",
    session: asString(data.session, "frame.session"),
    tick: asNumber(data.tick, "frame.tick"),
    real: {
      x: asNumber(real.x, "frame.real.x"),
      z: asNumber(real.z, "frame.real.z"),
      yaw: asNumber(real.yaw, "frame.real.yaw"),
    },
    avatar: {
      x: asNumber(avatar.x, "frame.avatar.x"),
      y: asNumber(avatar.y, "frame.avatar.y"),
      z: asNumber(avatar.z, "frame.avatar.z"),
      yaw: asNumber(avatar.yaw, "frame.avatar.yaw"),
    },
    mode: asString(data.mode, "frame.mode"),
    v_wip: asNumber(data.v_wip, "frame.v_wip"),
    warning: parseWarning(data.warning),
    metrics: asObject(data.metrics ?? {}, "frame.metrics"),
  };
}

export function parseServerMessage(raw: string): ServerMessage {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    fail("message is not valid JSON");
  }
  const message = asObject(data, "message");
  switch (message.type) {
    case "hello":
      return parseHello(message);
    case "frame":
      return parseFrame(message);
    default:
      fail(`unknown message type: ${String(message.type)}`);
  }
}

// ---- Client to server ----

export interface SteerCommand {
  forward: number;
  strafe: number;
  turn: number; // +1 turns clockwise, matching the host convention
  march: boolean;
}

export const ZERO_COMMAND: SteerCommand = {
  forward: 0,
  strafe: 0,
  turn: 0,
  march: false,
};

function clampIntent(value: number): number {
  return Math.min(1, Math.max(-1, value));
}

export function inputMessage(cmd: SteerCommand, tClient: number): string {
  // Intents clamp to [-1, 1] before hitting the wire; the host clamps again.
  return JSON.stringify({
    type: "input",
    t_client: tClient,
    move: { forward: clampIntent(cmd.forward), strafe: clampIntent(cmd.strafe) },
    turn: clampIntent(cmd.turn),
    march: Boolean(cmd.march),
  });
}

export function cssColor(rgba: Rgba): string {
  // color(srgb ...) takes float components directly, so the payload values
  // reach the canvas without any rescaling pass.
  return `color(srgb ${rgba[0]} ${rgba[1]} ${rgba[2]} / ${rgba[3]})`;
}
