// First-person indicator strip: one color band per hazard in frame order,
// approximating how the headset indicator planes read at a glance. Band
// colors are the payload rgba values untouched; a normal-zone hazard paints
// a fully transparent band, which is the point.

import { Canvas2D, drawEdgeArrow, drawSoundIcon } from "./draw.js";
import { ArrowSide, Rgba, cssColor } from "./protocol.js";
import { ViewModel } from "./viewModel.js";

export interface StripBand {
  id: string;
  rgba: Rgba; // the payload array itself, kept bit-equal
  css: string;
}

export interface StripState {
  tick: number | null;
  bands: StripBand[];
  arrows: ArrowSide[];
  soundOn: boolean;
}

export class IndicatorStrip {
  private last: StripState = {
    tick: null,
    bands: [],
    arrows: [],
    soundOn: false,
  };

  constructor(
    private readonly ctx: Canvas2D,
    private readonly width: number,
    private readonly height: number
  ) {}

  state(): StripState {
    return this.last;
  }

  render(model: ViewModel): void {
    const { ctx, width, height } = this;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#101218";
    ctx.fillRect(0, 0, width, height);

    const frame = model.frame;
    if (!frame) {
      this.last = { tick: null, bands: [], arrows: [], soundOn: false };
      return;
    }

    const hazards = frame.warning.hazards;
    const bands: StripBand[] = [];
    const bandWidth = hazards.length > 0 ? width / hazards.length : width;
    for (let i = 0; i < hazards.length; i++) {
      const hazard = hazards[i];
      const css = cssColor(hazard.rgba);
      ctx.fillStyle = css;
      ctx.fillRect(i * bandWidth, 0, bandWidth, height);
      ctx.fillStyle = "#6e7482";
      ctx.font = "10px monospace";
      ctx.textAlign = "center";
      ctx.textBaseline = "bottom";
      ctx.fillText(hazard.id, (i + 0.5) * bandWidth, height - 4);
      bands.push({ id: hazard.id, rgba: hazard.rgba, css });
    }

    const arrows: ArrowSide[] = [];
    for (const arrow of frame.warning.arrows) {
      const x = arrow.side === "left" ? 16 : width - 16;
      drawEdgeArrow(ctx, arrow.side, x, height / 2, 9);
      arrows.push(arrow.side);
    }

    const soundOn = frame.warning.sound_on;
    if (soundOn) drawSoundIcon(ctx, width - 40, 16, 9);

    this.last = { tick: frame.tick, bands, arrows, soundOn };
  }
}
