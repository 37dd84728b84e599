// Keyboard steering: W/S drive the forward intent, A/D turn, SPACE held
// marches in place. Key state lives in a lowercase set; the space bar
// normalizes to "space" so the set never holds a bare " ".

import { SteerCommand } from "./protocol.js";

export function normalizeKey(key: string): string {
  return key === " " ? "space" : key.toLowerCase();
}

export function commandFromKeys(keys: ReadonlySet<string>): SteerCommand {
  const axis = (pos: string, neg: string) =>
    (keys.has(pos) ? 1 : 0) - (keys.has(neg) ? 1 : 0);
  return {
    forward: axis("w", "s"),
    strafe: 0, // no key binding; the wire field stays zeroed
    turn: axis("d", "a"), // d turns clockwise, a counter-clockwise
    march: keys.has("space"),
  };
}

export interface KeyEventTarget {
  addEventListener(type: string, handler: (event: any) => void): void;
  removeEventListener(type: string, handler: (event: any) => void): void;
}

export class KeyTracker {
  private held = new Set<string>();
  private target: KeyEventTarget | null = null;

  private onDown = (event: { key: string }) => {
    this.held.add(normalizeKey(event.key));
  };

  private onUp = (event: { key: string }) => {
    this.held.delete(normalizeKey(event.key));
  };

  // Losing focus swallows keyup events and would leave keys stuck down.
  private onBlur = () => {
    this.held.clear();
  };

  attach(target: KeyEventTarget): void {
    this.detach();
    this.target = target;
    target.addEventListener("keydown", this.onDown);
    target.addEventListener("keyup", this.onUp);
    target.addEventListener("blur", this.onBlur);
  }

  detach(): void {
    if (!this.target) return;
    this.target.removeEventListener("keydown", this.onDown);
    this.target.removeEventListener("keyup", this.onUp);
    this.target.removeEventListener("blur", this.onBlur);
    this.target = null;
    this.held.clear();
  }

  keys(): ReadonlySet<string> {
    return this.held;
  }

  command(): SteerCommand {
    return commandFromKeys(this.held);
  }
}
