// Browser bootstrap: wires the canvases, keyboard, and session client
// together. The host URL comes from ?server=ws://host:port and defaults to
// the local serve port. This module only runs in a browser; everything it
// wires is importable and testable headlessly.

import { SessionClient } from "./client.js";
import { KeyTracker } from "./keyboard.js";
import { IndicatorStrip } from "./indicatorStrip.js";
import { RoomView } from "./roomView.js";

function requireCanvas(id: string): HTMLCanvasElement {
  const el = document.getElementById(id);
  if (!(el instanceof HTMLCanvasElement)) {
    throw new Error(`missing canvas #${id}`);
  }
  return el;
}

function main(): void {
  const roomCanvas = requireCanvas("room");
  const stripCanvas = requireCanvas("strip");
  const statusLine = document.getElementById("status");
  const roomCtx = roomCanvas.getContext("2d");
  const stripCtx = stripCanvas.getContext("2d");
  if (!roomCtx || !stripCtx) throw new Error("2d canvas is unavailable");

  const params = new URLSearchParams(window.location.search);
  const url = params.get("server") ?? "ws://127.0.0.1:8765";

  const client = new SessionClient(url, {
    onStatus: (status) => {
      if (statusLine) statusLine.textContent = `${status}  (${url})`;
    },
  });
  const view = new RoomView(roomCtx, roomCanvas.width, roomCanvas.height);
  const strip = new IndicatorStrip(
    stripCtx,
    stripCanvas.width,
    stripCanvas.height
  );
  const keys = new KeyTracker();
  keys.attach(window);
  client.connect();

  const loop = () => {
    client.model.keysHeld = keys.keys();
    // A steady refresh keeps held keys alive past the host's command TTL;
    // the client caps the wire rate at 60 Hz.
    client.sendCommand(keys.command());
    view.render(client.model);
    strip.render(client.model);
    requestAnimationFrame(loop);
  };
  requestAnimationFrame(loop);
}

if (typeof document !== "undefined") main();
