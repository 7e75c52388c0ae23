"""Interactive session server.

One WebSocket connection is one operator session: load a scenario, start it,
steer agents with tick-stamped commands, watch state frames stream back, and
save the episode log when done. Every message each way is a single JSON
object with a "type" field.

The simulation runs on its own thread at a configurable wall-clock pace;
the socket side keeps only the latest state frame (a slow client sees fewer
frames, never stale ones). Every session is recorded in memory in the
standard log format, so anything played live can be saved and replayed
bit-exact later.
"""

from __future__ import annotations

import asyncio
import io
import os
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from . import logs, scenarios, sim

PROTOCOL_VERSION = 1
_SENDER_POLL_SECONDS = 0.01
_MIN_TPS, _MAX_TPS = 0.1, 100000.0


def _parse_command(obj: dict) -> sim.Command:
    action = obj.get("action")
    agent = obj.get("agent")
    agent = int(agent) if agent is not None else None
    if action == "select":
        return sim.SelectAgent(agent=int(obj["agent"]))
    if action == "goal":
        return sim.SetGoal(x=float(obj["x"]), y=float(obj["y"]),
                           patrol=bool(obj.get("patrol", False)), agent=agent)
    if action == "altitude":
        word = str(obj.get("direction", "")).lower()
        if word not in ("up", "down"):
            raise ValueError("altitude direction must be 'up' or 'down'")
        return sim.Altitude(direction=1 if word == "up" else -1, agent=agent)
    raise ValueError(f"unknown command action {action!r}")


class SessionCore:
    """The simulation side of one session, driven by a worker thread."""

    def __init__(self, config: scenarios.ScenarioConfig, seed: int | None,
                 ticks_per_second: float) -> None:
        self.state = sim.reset(config, seed=seed)
        self.tick_wall_seconds = 1.0 / ticks_per_second
        self._pending: list[sim.Command] = []
        self._lock = threading.Lock()
        self._running = threading.Event()
        self._stop = threading.Event()
        self._buffer = io.BytesIO()
        self._writer = logs.LogWriter(self._buffer)
        self._writer.on_reset(self.state)
        self.finished = False
        self.summary: sim.EpisodeSummary | None = None
        self._slot: dict | None = None
        self._seq = 0
        self._thread: threading.Thread | None = None
        self._publish()

    # -- thread-side ---------------------------------------------------------

    def _publish(self) -> None:
        frame = sim.snapshot(self.state)
        frame["type"] = "state"
        frame["dropped_commands"] = self.state.dropped_commands
        with self._lock:
            self._seq += 1
            frame["seq"] = self._seq
            self._slot = frame

    def _loop(self) -> None:
        while not self._stop.is_set() and not self.state.terminated:
            if not self._running.wait(timeout=0.05):
                continue
            with self._lock:
                commands, self._pending = self._pending, []
            result = sim.step(self.state, commands)
            with self._lock:
                self._writer.on_tick(self.state, result.events)
            self._publish()
            if result.done:
                break
            if self.tick_wall_seconds > 0:
                self._stop.wait(timeout=self.tick_wall_seconds)
        if self.state.terminated:
            self.summary = sim.summarize(self.state)
            with self._lock:
                self._writer.on_end(self.state, self.summary)
        self.finished = True

    # -- socket-side ---------------------------------------------------------

    def start(self) -> None:
        if self._thread is None:
            self._thread = threading.Thread(target=self._loop, daemon=True)
            self._thread.start()
        self._running.set()

    def pause(self) -> None:
        self._running.clear()

    @property
    def started(self) -> bool:
        return self._thread is not None

    def stop(self) -> None:
        self._stop.set()
        self._running.set()
        if self._thread is not None:
            self._thread.join(timeout=5.0)

    def queue(self, command: sim.Command) -> None:
        with self._lock:
            self._pending.append(command)

    def latest(self, after_seq: int) -> dict | None:
        with self._lock:
            if self._slot is not None and self._seq > after_seq:
                return self._slot
        return None

    def log_bytes(self) -> bytes:
        with self._lock:
            return self._buffer.getvalue()


def _preset_rows() -> list[dict]:
    rows = []
    for sid in scenarios.preset_ids():
        config = scenarios.preset(sid)
        rows.append({
            "id": sid,
            "practice": config.practice,
            "regions": len(config.regions),
            "firefronts": config.total_firefronts,
            "agents": len(config.agents),
            "facilities": len(config.facilities),
            "duration": config.world.duration,
        })
    return rows


@dataclass
class _SessionState:
    core: SessionCore | None = None
    announced_finish: bool = False
    send_lock: asyncio.Lock = field(default_factory=asyncio.Lock)


def create_app(static_dir: str | None = None, ticks_per_second: float = 10.0,
               out_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="firecommander session server")
    save_root = os.path.abspath(out_dir or os.getcwd())

    @app.get("/api/health")
    def health() -> dict:
        return {"ok": True, "protocol": PROTOCOL_VERSION}

    @app.get("/api/presets")
    def presets() -> list[dict]:
        return _preset_rows()

    @app.get("/api/presets/{preset_id}")
    def preset_detail(preset_id: str) -> dict:
        try:
            return scenarios.to_mapping(scenarios.preset(preset_id))
        except ValueError:
            from fastapi import HTTPException

            raise HTTPException(status_code=404, detail="unknown preset")

    @app.websocket("/session")
    async def session(ws: WebSocket) -> None:
        await ws.accept()
        ses = _SessionState()

        async def send(obj: dict) -> None:
            async with ses.send_lock:
                await ws.send_json(obj)

        async def send_error(code: str, message: str) -> None:
            await send({"type": "error", "code": code, "message": message})

        async def pump_frames() -> None:
            seq = 0
            while True:
                core = ses.core
                if core is None:
                    await asyncio.sleep(_SENDER_POLL_SECONDS)
                    continue
                frame = core.latest(seq)
                if frame is not None:
                    seq = frame["seq"]
                    await send(frame)
                    continue
                if core.finished and not ses.announced_finish:
                    ses.announced_finish = True
                    summary = core.summary
                    await send({"type": "finished",
                                "summary": summary.to_mapping() if summary else None})
                await asyncio.sleep(_SENDER_POLL_SECONDS)

        pump = asyncio.create_task(pump_frames())
        try:
            while True:
                try:
                    msg = await ws.receive_json()
                except (ValueError, KeyError):
                    await send_error("bad_message", "each message must be one JSON object")
                    continue
                if not isinstance(msg, dict) or "type" not in msg:
                    await send_error("bad_message", "missing message type")
                    continue
                kind = msg["type"]

                if kind == "hello":
                    await send({"type": "welcome", "protocol": PROTOCOL_VERSION,
                                "presets": _preset_rows()})

                elif kind == "list_presets":
                    await send({"type": "presets", "presets": _preset_rows()})

                elif kind == "load_scenario":
                    if (ses.core is not None and ses.core.started
                            and not ses.core.finished):
                        await send_error("busy", "a scenario is already running")
                        continue
                    try:
                        if "preset" in msg:
                            config = scenarios.preset(str(msg["preset"]))
                        elif "config" in msg:
                            config = scenarios.from_mapping(msg["config"])
                        else:
                            raise ValueError("need a preset id or an inline config")
                        report = scenarios.validate(config)
                        if not report.ok:
                            raise ValueError("; ".join(
                                f"{v.code}: {v.message}" for v in report.violations))
                        tps = float(msg.get("ticks_per_second", ticks_per_second))
                        tps = min(max(tps, _MIN_TPS), _MAX_TPS)
                        seed = msg.get("seed")
                        core = SessionCore(config, seed=None if seed is None else int(seed),
                                           ticks_per_second=tps)
                    except ValueError as exc:
                        await send_error("bad_scenario", str(exc))
                        continue
                    ses.core = core
                    ses.announced_finish = False
                    await send({"type": "scenario_loaded",
                                "config": scenarios.to_mapping(core.state.config),
                                "seed": core.state.seed,
                                "practice": core.state.config.practice})

                elif kind in ("start", "resume"):
                    if ses.core is None:
                        await send_error("no_scenario", "load a scenario first")
                        continue
                    ses.core.start()
                    await send({"type": "running", "tick": ses.core.state.tick})

                elif kind == "pause":
                    if ses.core is None:
                        await send_error("no_scenario", "load a scenario first")
                        continue
                    ses.core.pause()
                    await send({"type": "paused", "tick": ses.core.state.tick})

                elif kind == "command":
                    core = ses.core
                    if core is None or core.finished:
                        await send_error("not_running", "no live scenario to command")
                        continue
                    try:
                        command = _parse_command(msg.get("command") or {})
                    except (KeyError, TypeError, ValueError) as exc:
                        await send_error("bad_command", str(exc))
                        continue
                    core.queue(command)
                    await send({"type": "queued", "tick": core.state.tick})

                elif kind == "save_playback":
                    core = ses.core
                    if core is None:
                        await send_error("no_scenario", "nothing recorded yet")
                        continue
                    name = str(msg.get("name") or "episode.fclog")
                    if os.sep in name or "/" in name or name.startswith("."):
                        await send_error("bad_name", "plain file names only")
                        continue
                    data = core.log_bytes()
                    path = os.path.join(save_root, name)
                    try:
                        os.makedirs(save_root, exist_ok=True)
                        with open(path, "wb") as fh:
                            fh.write(data)
                    except OSError as exc:
                        await send_error("save_failed", str(exc))
                        continue
                    await send({"type": "saved", "path": path, "bytes": len(data)})

                elif kind == "export_frames":
                    core = ses.core
                    if core is None:
                        await send_error("no_scenario", "nothing recorded yet")
                        continue
                    name = str(msg.get("name") or "frames")
                    if os.sep in name or "/" in name or name.startswith("."):
                        await send_error("bad_name", "plain directory names only")
                        continue
                    every = int(msg.get("every", 10))
                    try:
                        doc = logs.read_log_bytes(core.log_bytes())
                        out = os.path.join(save_root, name)
                        names = await asyncio.to_thread(
                            logs.export_frames, doc, every, out)
                    except (ValueError, logs.LogIntegrityError, OSError) as exc:
                        await send_error("export_failed", str(exc))
                        continue
                    await send({"type": "frames_exported", "dir": out,
                                "count": len(names)})

                elif kind == "quit":
                    await send({"type": "bye"})
                    break

                else:
                    await send_error("unknown_type", f"no such message type {kind!r}")
        except WebSocketDisconnect:
            pass
        finally:
            pump.cancel()
            if ses.core is not None:
                ses.core.stop()

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="client")
    return app
