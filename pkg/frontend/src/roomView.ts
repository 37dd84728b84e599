// Top-down room renderer: boundary and obstacles tinted with the server's
// indicator colors, the tracked person with a field-of-view wedge, the
// avatar ghost, edge arrows, and the sound icon. Every color painted here
// comes verbatim from the frame payload; this module does no zone math.

import { Canvas2D, drawEdgeArrow, drawSoundIcon } from "./draw.js";
import {
  EdgeArrow,
  HazardStatus,
  Rgba,
  RoomInfo,
  StateFrameMessage,
  cssColor,
} from "./protocol.js";
import { ViewModel } from "./viewModel.js";

export interface PaintedTint {
  id: string;
  rgba: Rgba; // the payload array itself, kept bit-equal
  css: string;
}

export interface RoomViewState {
  tick: number | null;
  painted: PaintedTint[]; // hazards tinted this render, frame order
  arrows: EdgeArrow[];
  soundOn: boolean;
  banner: string | null; // non-null while the scene is greyed out
}

const MARGIN = 24;

interface Transform {
  sx: (x: number) => number;
  sy: (z: number) => number;
  scale: number;
}

function fitRoom(room: RoomInfo, width: number, height: number): Transform {
  let minX = Infinity;
  let maxX = -Infinity;
  let minZ = Infinity;
  let maxZ = -Infinity;
  for (const [x, z] of room.boundary) {
    minX = Math.min(minX, x);
    maxX = Math.max(maxX, x);
    minZ = Math.min(minZ, z);
    maxZ = Math.max(maxZ, z);
  }
  const scale = Math.min(
    (width - 2 * MARGIN) / Math.max(maxX - minX, 1e-9),
    (height - 2 * MARGIN) / Math.max(maxZ - minZ, 1e-9)
  );
  return {
    // z grows away from the near wall, so it maps to screen-up
    sx: (x) => MARGIN + (x - minX) * scale,
    sy: (z) => height - MARGIN - (z - minZ) * scale,
    scale,
  };
}

export class RoomView {
  private last: RoomViewState = {
    tick: null,
    painted: [],
    arrows: [],
    soundOn: false,
    banner: null,
  };

  constructor(
    private readonly ctx: Canvas2D,
    private readonly width: number,
    private readonly height: number
  ) {}

  state(): RoomViewState {
    return this.last;
  }

  render(model: ViewModel): void {
    const { ctx, width, height } = this;
    const frame = model.frame;
    const room = model.room;

    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#14161c";
    ctx.fillRect(0, 0, width, height);

    const painted: PaintedTint[] = [];
    if (room) {
      const t = fitRoom(room, width, height);
      this.drawBoundary(room, frame, t, painted);
      this.drawObstacles(room, frame, t, painted);
      if (frame) {
        this.drawAvatar(frame, t);
        this.drawPerson(model, frame, t);
        this.drawHud(frame);
      }
    } else {
      ctx.fillStyle = "#9aa0aa";
      ctx.font = "14px sans-serif";
      ctx.textAlign = "center";
      ctx.textBaseline = "middle";
      ctx.fillText("waiting for session", width / 2, height / 2);
    }

    const arrows = frame ? frame.warning.arrows : [];
    this.drawArrows(arrows);
    const soundOn = frame ? frame.warning.sound_on : false;
    if (soundOn) drawSoundIcon(ctx, width - 36, 28, 12);

    const banner = model.connected ? null : model.status;
    if (banner) this.drawBanner(banner);

    this.last = {
      tick: frame ? frame.tick : null,
      painted,
      arrows,
      soundOn,
      banner,
    };
  }

  private hazardById(
    frame: StateFrameMessage | null,
    id: string
  ): HazardStatus | undefined {
    return frame?.warning.hazards.find((h) => h.id === id);
  }

  private drawBoundary(
    room: RoomInfo,
    frame: StateFrameMessage | null,
    t: Transform,
    painted: PaintedTint[]
  ): void {
    const { ctx } = this;
    const n = room.boundary.length;
    for (let i = 0; i < n; i++) {
      const [ax, az] = room.boundary[i];
      const [bx, bz] = room.boundary[(i + 1) % n];
      // boundary edge i is reported as the hazard "limit-<i>"
      const hazard = this.hazardById(frame, `limit-${i}`);
      ctx.beginPath();
      ctx.moveTo(t.sx(ax), t.sy(az));
      ctx.lineTo(t.sx(bx), t.sy(bz));
      if (hazard && hazard.rgba[3] > 0) {
        const css = cssColor(hazard.rgba);
        ctx.strokeStyle = css;
        ctx.lineWidth = 5;
        painted.push({ id: hazard.id, rgba: hazard.rgba, css });
      } else {
        ctx.strokeStyle = "#5a6170";
        ctx.lineWidth = 2;
      }
      ctx.stroke();
    }
  }

  private drawObstacles(
    room: RoomInfo,
    frame: StateFrameMessage | null,
    t: Transform,
    painted: PaintedTint[]
  ): void {
    const { ctx } = this;
    for (const box of room.obstacles) {
      const x = t.sx(box.min[0]);
      const y = t.sy(box.max[1]);
      const w = (box.max[0] - box.min[0]) * t.scale;
      const h = (box.max[1] - box.min[1]) * t.scale;
      ctx.fillStyle = "#3a3f4a";
      ctx.fillRect(x, y, w, h);
      const hazard = this.hazardById(frame, box.id);
      if (hazard && hazard.rgba[3] > 0) {
        const css = cssColor(hazard.rgba);
        ctx.fillStyle = css;
        ctx.fillRect(x, y, w, h);
        painted.push({ id: hazard.id, rgba: hazard.rgba, css });
      }
      ctx.strokeStyle = "#818897";
      ctx.lineWidth = 1;
      ctx.strokeRect(x, y, w, h);
      if (box.label) {
        ctx.fillStyle = "#c6cad2";
        ctx.font = "11px sans-serif";
        ctx.textAlign = "center";
        ctx.textBaseline = "middle";
        ctx.fillText(box.label, x + w / 2, y + h / 2);
      }
    }
  }

  private drawAvatar(frame: StateFrameMessage, t: Transform): void {
    const { ctx } = this;
    const r = Math.max(4, 0.18 * t.scale);
    ctx.strokeStyle = "#4fc3f7";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(t.sx(frame.avatar.x), t.sy(frame.avatar.z), r, 0, 2 * Math.PI);
    ctx.stroke();
  }

  private drawPerson(
    model: ViewModel,
    frame: StateFrameMessage,
    t: Transform
  ): void {
    const { ctx } = this;
    const cfg = model.hello?.config ?? {};
    const num = (key: string, fallback: number) =>
      typeof cfg[key] === "number" ? (cfg[key] as number) : fallback;
    const radius = Math.max(5, num("collision_radius", 0.2) * t.scale);
    const half = num("fov_half_angle", Math.PI / 4);

    const { x, z, yaw } = frame.real;
    const px = t.sx(x);
    const py = t.sy(z);

    // gaze wedge: two rays at yaw +/- half, in the yaw-0-faces-+z frame
    const ray = (a: number, reach: number): [number, number] => [
      t.sx(x - Math.sin(a) * reach),
      t.sy(z + Math.cos(a) * reach),
    ];
    const reach = 0.9;
    ctx.save();
    ctx.globalAlpha = 0.14;
    ctx.fillStyle = "#ffffff";
    ctx.beginPath();
    ctx.moveTo(px, py);
    const [lx, ly] = ray(yaw - half, reach);
    const [rx, ry] = ray(yaw + half, reach);
    ctx.lineTo(lx, ly);
    ctx.lineTo(rx, ry);
    ctx.closePath();
    ctx.fill();
    ctx.restore();

    ctx.fillStyle = "#f0f2f5";
    ctx.beginPath();
    ctx.arc(px, py, radius, 0, 2 * Math.PI);
    ctx.fill();

    const [hx, hy] = ray(yaw, 0.45);
    ctx.strokeStyle = "#f0f2f5";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(px, py);
    ctx.lineTo(hx, hy);
    ctx.stroke();
  }

  private drawHud(frame: StateFrameMessage): void {
    const { ctx } = this;
    ctx.fillStyle = "#9aa0aa";
    ctx.font = "12px monospace";
    ctx.textAlign = "left";
    ctx.textBaseline = "top";
    ctx.fillText(`mode ${frame.mode}  v_wip ${frame.v_wip.toFixed(2)}`, 8, 8);
  }

  private drawArrows(arrows: EdgeArrow[]): void {
    const { ctx, width, height } = this;
    let leftCount = 0;
    let rightCount = 0;
    for (const arrow of arrows) {
      const stack = arrow.side === "left" ? leftCount++ : rightCount++;
      const x = arrow.side === "left" ? 18 : width - 18;
      drawEdgeArrow(ctx, arrow.side, x, height / 2 + stack * 30, 11);
    }
  }

  private drawBanner(status: string): void {
    const { ctx, width, height } = this;
    ctx.save();
    ctx.globalAlpha = 0.55;
    ctx.fillStyle = "#222630";
    ctx.fillRect(0, 0, width, height);
    ctx.restore();
    ctx.fillStyle = "#ffd24d";
    ctx.font = "16px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(status, width / 2, height / 2);
  }
}
