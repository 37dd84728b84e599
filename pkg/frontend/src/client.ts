// WebSocket session client: feeds parsed server messages into a ViewModel,
// reconnects with capped exponential backoff, and rate-limits steering
// commands to at most 60 per second with a trailing send so the last
// intent always reaches the host.

import {
  HelloMessage,
  ProtocolError,
  ServerMessage,
  StateFrameMessage,
  SteerCommand,
  inputMessage,
  parseServerMessage,
} from "./protocol.js";
import { ConnectionStatus, ViewModel } from "./viewModel.js";

// Structural subset shared by the browser WebSocket and the ws package,
// so tests can substitute a scripted fake.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open" | "close" | "error", handler: () => void): void;
  addEventListener(
    type: "message",
    handler: (event: { data: unknown }) => void
  ): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ClientOptions {
  socketFactory?: SocketFactory;
  now?: () => number; // millisecond clock, injectable for tests
  reconnectDelayMs?: number; // base backoff, doubles per failed attempt
  maxSendHz?: number;
  onHello?: (message: HelloMessage) => void;
  onFrame?: (message: StateFrameMessage) => void;
  onStatus?: (status: ConnectionStatus) => void;
  onProtocolError?: (error: ProtocolError) => void;
}

const MAX_RECONNECT_DELAY_MS = 8000;

function defaultFactory(url: string): SocketLike {
  if (typeof WebSocket === "undefined") {
    throw new Error("no WebSocket in this runtime; pass a socketFactory");
  }
  return new WebSocket(url);
}

export class SessionClient {
  readonly model = new ViewModel();

  private readonly url: string;
  private readonly factory: SocketFactory;
  private readonly now: () => number;
  private readonly reconnectDelayMs: number;
  private readonly minSendIntervalMs: number;
  private readonly opts: ClientOptions;

  private socket: SocketLike | null = null;
  private generation = 0; // events from retired sockets must not act
  private closed = false;
  private attempts = 0;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;

  private lastSendAt = Number.NEGATIVE_INFINITY;
  private pending: SteerCommand | null = null;
  private flushTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(url: string, opts: ClientOptions = {}) {
    this.url = url;
    this.opts = opts;
    this.factory = opts.socketFactory ?? defaultFactory;
    this.now = opts.now ?? Date.now;
    this.reconnectDelayMs = opts.reconnectDelayMs ?? 500;
    this.minSendIntervalMs = 1000 / (opts.maxSendHz ?? 60);
  }

  status(): ConnectionStatus {
    return this.model.status;
  }

  connect(): void {
    if (this.closed) return;
    const gen = ++this.generation;
    this.setStatus(this.attempts === 0 ? "connecting" : "reconnecting");

    const socket = this.factory(this.url);
    this.socket = socket;
    socket.addEventListener("open", () => {
      if (gen !== this.generation || this.closed) return;
      this.attempts = 0;
      this.setStatus("connected");
    });
    socket.addEventListener("message", (event) => {
      if (gen !== this.generation || this.closed) return;
      this.handleMessage(String(event.data));
    });
    const retire = () => this.retire(gen);
    socket.addEventListener("close", retire);
    socket.addEventListener("error", retire);
  }

  close(): void {
    this.closed = true;
    this.generation++;
    if (this.reconnectTimer !== null) clearTimeout(this.reconnectTimer);
    if (this.flushTimer !== null) clearTimeout(this.flushTimer);
    this.reconnectTimer = null;
    this.flushTimer = null;
    this.pending = null;
    if (this.socket) {
      try {
        this.socket.close();
      } catch {
        // already gone
      }
      this.socket = null;
    }
    this.setStatus("closed");
  }

  // Commands sent while disconnected are dropped by contract; the status
  // line is the user's signal, not an exception.
  sendCommand(cmd: SteerCommand): void {
    if (this.closed || !this.model.connected || !this.socket) return;
    const now = this.now();
    const due = this.lastSendAt + this.minSendIntervalMs;
    if (now >= due) {
      this.transmit(cmd, now);
      return;
    }
    this.pending = cmd; // last writer wins when keys change mid-interval
    if (this.flushTimer === null) {
      this.flushTimer = setTimeout(() => {
        this.flushTimer = null;
        const queued = this.pending;
        this.pending = null;
        if (queued && !this.closed && this.model.connected && this.socket) {
          // Timers with fractional delays can fire a hair early; pace from
          // the schedule so consecutive sends never compress below the cap.
          this.transmit(queued, Math.max(this.now(), due));
        }
      }, due - now);
    }
  }

  private transmit(cmd: SteerCommand, now: number): void {
    this.lastSendAt = now;
    this.socket!.send(inputMessage(cmd, now / 1000));
  }

  private handleMessage(raw: string): void {
    let message: ServerMessage;
    try {
      message = parseServerMessage(raw);
    } catch (error) {
      if (error instanceof ProtocolError) {
        // Skip the bad message but stay connected; the stream may resync.
        this.opts.onProtocolError?.(error);
        return;
      }
      throw error;
    }
    if (message.type === "hello") {
      this.model.acceptHello(message);
      this.opts.onHello?.(message);
    } else {
      this.model.acceptFrame(message);
      this.opts.onFrame?.(message);
    }
  }

  private retire(gen: number): void {
    if (this.closed || gen !== this.generation) return;
    this.generation++; // close and error both fire; only the first acts
    this.socket = null;
    this.setStatus("reconnecting");
    const delay = Math.min(
      this.reconnectDelayMs * 2 ** this.attempts,
      MAX_RECONNECT_DELAY_MS
    );
    this.attempts++;
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      this.connect();
    }, delay);
  }

  private setStatus(status: ConnectionStatus): void {
    if (this.model.status === status) return;
    this.model.status = status;
    this.opts.onStatus?.(status);
  }
}
