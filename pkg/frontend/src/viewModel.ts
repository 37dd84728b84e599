// What the renderers are allowed to see: the latest server messages held
// verbatim, the connection status, and the keys currently down. Zones and
// colors are never recomputed on this side; the frame is the single source
// of truth for them.

import { HelloMessage, RoomInfo, StateFrameMessage } from "./protocol.js";

export type ConnectionStatus =
  | "connecting"
  | "connected"
  | "reconnecting"
  | "closed";

export class ViewModel {
  hello: HelloMessage | null = null;
  frame: StateFrameMessage | null = null;
  status: ConnectionStatus = "connecting";
  keysHeld: ReadonlySet<string> = new Set();

  get room(): RoomInfo | null {
    return this.hello ? this.hello.room : null;
  }

  get connected(): boolean {
    return this.status === "connected";
  }

  acceptHello(message: HelloMessage): void {
    this.hello = message;
    this.frame = null; // a frame from an old session would render a stale pose
  }

  acceptFrame(message: StateFrameMessage): void {
    this.frame = message;
  }
}
