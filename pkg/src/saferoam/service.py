"""Live session host: steering commands in, per-tick state frames out.

The synchronous :class:`SessionEngine` owns all session state and is what the
tests exercise; the network layer (WebSocket or newline-delimited JSON over
TCP) is a thin shell that feeds it commands and relays its frames.  Each
session is a single sequential actor: all engine calls for a session happen on
one event loop, and clients talk to it only through value messages.
"""

from __future__ import annotations

import asyncio
import json
import math
from dataclasses import dataclass, replace
from typing import AsyncIterator, Awaitable, Callable, Optional

from saferoam.gait import FrameSynthesizer, GaitKind, GaitParams
from saferoam.geometry import RoomModel, heading, wrap_angle
from saferoam.pipeline import PersonPipeline
from saferoam.sim import (
    DEFAULT_TICK,
    MetricsAccumulator,
    SimConfig,
    frame_record,
)

MAX_MARCH_RATE = 3.0  # steps/s ceiling on the march intent
DEFAULT_GROUND_SPEED_MAX = 1.4  # m/s at full forward intent
DEFAULT_TURN_RATE_MAX = math.pi / 2  # rad/s at full turn intent
DEFAULT_COMMAND_TTL = 0.25  # s a held command stays live without refresh
DEFAULT_SYNTH_NOISE = 0.005  # m, keeps the live stream honest but stable


class UnknownSessionError(KeyError):
    """Raised for operations on a session id the engine does not host."""


def _clamp(value: float, lo: float, hi: float) -> float:
    return min(max(float(value), lo), hi)


@dataclass(frozen=True)
class InputCommand:
    """One steering sample from a client; intents clamp to [-1, 1].

    turn follows the steering convention: +1 turns clockwise (to the
    person's right), -1 counter-clockwise.
    """

    forward: float = 0.0
    strafe: float = 0.0
    turn: float = 0.0
    march: bool = False
    t_client: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "forward", _clamp(self.forward, -1.0, 1.0))
        object.__setattr__(self, "strafe", _clamp(self.strafe, -1.0, 1.0))
        object.__setattr__(self, "turn", _clamp(self.turn, -1.0, 1.0))

    @classmethod
    def from_dict(cls, data: dict) -> "InputCommand":
        move = data.get("move", {})
        return cls(
            forward=float(move.get("forward", 0.0)),
            strafe=float(move.get("strafe", 0.0)),
            turn=float(data.get("turn", 0.0)),
            march=bool(data.get("march", False)),
            t_client=float(data.get("t_client", 0.0)),
        )

    def to_dict(self) -> dict:
        return {
            "type": "input",
            "t_client": self.t_client,
            "move": {"forward": self.forward, "strafe": self.strafe},
            "turn": self.turn,
            "march": self.march,
        }


ZERO_COMMAND = InputCommand()


@dataclass(frozen=True)
class ServiceConfig:
    """Live-host knobs: command-to-motion mapping plus the fixed tick."""

    tick: float = DEFAULT_TICK
    ground_speed_max: float = DEFAULT_GROUND_SPEED_MAX
    turn_rate_max: float = DEFAULT_TURN_RATE_MAX
    march_step_rate: float = 2.0
    knee_lift: float = 0.25
    command_ttl: float = DEFAULT_COMMAND_TTL
    noise_sigma: float = DEFAULT_SYNTH_NOISE
    seed: int = 0

    def __post_init__(self):
        if self.tick <= 0 or self.command_ttl <= 0:
            raise ValueError("tick and command_ttl must be positive")
        if not 0 < self.march_step_rate <= MAX_MARCH_RATE:
            raise ValueError(f"march_step_rate must be in (0, {MAX_MARCH_RATE}]")
        if self.ground_speed_max <= 0 or self.turn_rate_max <= 0:
            raise ValueError("speed and turn-rate limits must be positive")
        if self.noise_sigma < 0 or self.knee_lift <= 0:
            raise ValueError("noise_sigma >= 0 and knee_lift > 0 required")


class _Session:
    """State for one hosted person; touched only by the engine."""

    def __init__(self, sid: str, room: RoomModel, sim: SimConfig, cfg: ServiceConfig):
        self.id = sid
        self.room = room
        start = room.centroid
        synth_params = GaitParams(
            kind=GaitKind.STATIONARY,  # kind is unused by the synthesizer
            step_rate=cfg.march_step_rate,
            knee_lift=cfg.knee_lift,
            noise_sigma=cfg.noise_sigma,
            frame_rate=1.0 / sim.tick,
            duration=1.0,
            seed=cfg.seed,
        )
        self.synth = FrameSynthesizer(synth_params, start=start, yaw=0.0)
        self.pipeline = PersonPipeline(room, sim.locomotion, sim.warning)
        self.metrics = MetricsAccumulator(room, sim.collision_radius)
        self.ticks = 0
        self.command = ZERO_COMMAND
        self.command_tick: Optional[int] = None  # tick index when received


class SessionEngine:
    """Synchronous multi-session core; deterministic given a command schedule."""

    def __init__(
        self,
        room: RoomModel,
        sim: Optional[SimConfig] = None,
        cfg: ServiceConfig = ServiceConfig(),
    ):
        self.room = room
        self.sim = sim if sim is not None else SimConfig(room=room)
        self.cfg = cfg
        self._sessions: dict[str, _Session] = {}
        self._next_id = 1

    def _get(self, sid: str) -> _Session:
        try:
            return self._sessions[sid]
        except KeyError:
            raise UnknownSessionError(f"no such session: {sid!r}") from None

    def create_session(self, room: Optional[RoomModel] = None) -> str:
        """New person standing at the room centroid, facing +z, stationary."""
        sid = f"session-{self._next_id}"
        self._next_id += 1
        sess_room = room if room is not None else self.room
        sim = self.sim if sess_room is self.room else replace(self.sim, room=sess_room)
        self._sessions[sid] = _Session(sid, sess_room, sim, self.cfg)
        return sid

    def close_session(self, sid: str) -> None:
        self._get(sid)
        del self._sessions[sid]

    def session_ids(self) -> list[str]:
        return sorted(self._sessions)

    def apply_input(self, sid: str, cmd: InputCommand) -> bool:
        """Store the latest command; ticks sample it last-writer-wins."""
        sess = self._get(sid)
        sess.command = cmd
        sess.command_tick = sess.ticks
        return True

    def hello(self, sid: str) -> dict:
        """Bootstrap message carrying everything a client needs to render."""
        sess = self._get(sid)
        return {
            "type": "hello",
            "session": sid,
            "room": sess.room.to_dict(),
            "tick": self.cfg.tick,
            "config": self.sim.to_dict(),
        }

    def tick(self, sid: str, dt: Optional[float] = None) -> dict:
        """Advance one session by one tick and return its state frame.

        The held command steers the synthesizer; a command older than the
        TTL decays to zero so an idle or vanished client leaves the person
        standing.  Motion is never blocked by geometry: the system warns.
        """
        sess = self._get(sid)
        step = self.cfg.tick if dt is None else dt
        if step <= 0:
            raise ValueError(f"dt must be positive, got {step}")

        cmd = sess.command
        if (
            sess.command_tick is None
            or (sess.ticks - sess.command_tick) * self.cfg.tick > self.cfg.command_ttl
        ):
            cmd = ZERO_COMMAND

        yaw = wrap_angle(sess.synth.yaw - cmd.turn * self.cfg.turn_rate_max * step)
        hx, hz = heading(yaw)
        rx, rz = math.cos(yaw), math.sin(yaw)  # unit right axis
        vx = (cmd.forward * hx + cmd.strafe * rx) * self.cfg.ground_speed_max
        vz = (cmd.forward * hz + cmd.strafe * rz) * self.cfg.ground_speed_max
        speed = math.hypot(vx, vz)
        if speed > self.cfg.ground_speed_max:
            scale = self.cfg.ground_speed_max / speed
            vx, vz = vx * scale, vz * scale

        frame = sess.synth.step(step, (vx, vz), yaw, cmd.march)
        result = sess.pipeline.feed(frame)
        sess.metrics.observe(
            result.estimate.t, result.estimate.chest.ground, result.mode
        )
        record = frame_record(sess.ticks, result, sess.metrics.report())
        sess.ticks += 1
        message = {"type": "frame", "session": sid}
        message.update((k, v) for k, v in record.items() if k != "type")
        return message


async def _run_connection(
    engine: SessionEngine,
    send_json: Callable[[dict], Awaitable[None]],
    recv_lines: AsyncIterator[str],
) -> None:
    """Transport-agnostic session loop: hello, then reader + fixed-rate ticker."""
    sid = engine.create_session()
    await send_json(engine.hello(sid))

    async def read_inputs() -> None:
        async for raw in recv_lines:
            try:
                data = json.loads(raw)
            except json.JSONDecodeError:
                continue  # tolerate garbage; the stream may resync
            if data.get("type") == "input":
                engine.apply_input(sid, InputCommand.from_dict(data))

    async def run_ticks() -> None:
        loop = asyncio.get_running_loop()
        next_at = loop.time()
        while True:
            next_at += engine.cfg.tick
            delay = next_at - loop.time()
            if delay > 0:
                await asyncio.sleep(delay)
            await send_json(engine.tick(sid))

    reader = asyncio.create_task(read_inputs())
    ticker = asyncio.create_task(run_ticks())
    try:
        done, pending = await asyncio.wait(
            {reader, ticker}, return_when=asyncio.FIRST_COMPLETED
        )
        for task in pending:
            task.cancel()
        for task in done:
            exc = task.exception()
            if exc is not None and not isinstance(exc, (ConnectionError, EOFError)):
                raise exc
    finally:
        reader.cancel()
        ticker.cancel()
        engine.close_session(sid)


async def serve_websocket(engine: SessionEngine, host: str, port: int) -> None:
    """Host sessions over JSON WebSocket messages until cancelled."""
    import websockets
    import websockets.exceptions

    async def handler(ws) -> None:
        async def send_json(message: dict) -> None:
            await ws.send(json.dumps(message))

        async def lines() -> AsyncIterator[str]:
            async for raw in ws:
                yield raw if isinstance(raw, str) else raw.decode()

        try:
            await _run_connection(engine, send_json, lines())
        except websockets.exceptions.ConnectionClosed:
            pass

    async with websockets.serve(handler, host, port):
        await asyncio.Event().wait()


async def serve_tcp(engine: SessionEngine, host: str, port: int) -> None:
    """Host sessions over newline-delimited JSON on a TCP socket until cancelled."""

    async def handler(reader: asyncio.StreamReader, writer: asyncio.StreamWriter):
        async def send_json(message: dict) -> None:
            writer.write((json.dumps(message) + "\n").encode())
            await writer.drain()

        async def lines() -> AsyncIterator[str]:
            while True:
                raw = await reader.readline()
                if not raw:
                    return
                yield raw.decode()

        try:
            await _run_connection(engine, send_json, lines())
        except ConnectionError:
            pass
        finally:
            writer.close()

    server = await asyncio.start_server(handler, host, port)
    async with server:
        await server.serve_forever()


def serve_forever(
    engine: SessionEngine, host: str, port: int, transport: str = "websocket"
) -> None:
    """Blocking entry point used by the command line."""
    if transport == "websocket":
        asyncio.run(serve_websocket(engine, host, port))
    elif transport == "tcp":
        asyncio.run(serve_tcp(engine, host, port))
    else:
        raise ValueError(f"unknown transport: {transport!r}")
