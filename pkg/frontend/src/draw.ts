// Minimal drawing surface the renderers need. CanvasRenderingContext2D
// satisfies it structurally; tests substitute a recording stub.

export interface Canvas2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: string;
  textBaseline: string;
  save(): void;
  restore(): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

// Chevron pointing off the given side of the view, drawn in the fixed
// alert red; arrow color is presentation, not a zone color.
export function drawEdgeArrow(
  ctx: Canvas2D,
  side: "left" | "right",
  x: number,
  y: number,
  size: number
): void {
  const dir = side === "left" ? -1 : 1;
  ctx.save();
  ctx.fillStyle = "#e33";
  ctx.beginPath();
  ctx.moveTo(x + dir * size, y);
  ctx.lineTo(x - dir * size * 0.6, y - size);
  ctx.lineTo(x - dir * size * 0.6, y + size);
  ctx.closePath();
  ctx.fill();
  ctx.restore();
}

// Small speaker glyph with sound waves; drawn only while the alert rings.
export function drawSoundIcon(
  ctx: Canvas2D,
  x: number,
  y: number,
  size: number
): void {
  ctx.save();
  ctx.fillStyle = "#e33";
  ctx.strokeStyle = "#e33";
  ctx.lineWidth = Math.max(1, size * 0.12);
  ctx.fillRect(x - size, y - size * 0.4, size * 0.6, size * 0.8);
  ctx.beginPath();
  ctx.moveTo(x - size * 0.4, y - size * 0.4);
  ctx.lineTo(x, y - size);
  ctx.lineTo(x, y + size);
  ctx.lineTo(x - size * 0.4, y + size * 0.4);
  ctx.closePath();
  ctx.fill();
  ctx.beginPath();
  ctx.arc(x + size * 0.35, y, size * 0.55, -Math.PI / 3, Math.PI / 3);
  ctx.stroke();
  ctx.beginPath();
  ctx.arc(x + size * 0.35, y, size * 0.95, -Math.PI / 3, Math.PI / 3);
  ctx.stroke();
  ctx.restore();
}
