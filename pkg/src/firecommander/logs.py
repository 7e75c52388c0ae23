"""Episode recording and bit-exact replay.

A log is a plain-text YAML header (format version, the full scenario, the
seed, tick length, recording rate, creation stamp) followed by length-prefixed
little-endian binary records, one group per tick, every real number a
float64. Record kinds:

  1 agent telemetry (16 numbers per agent per tick)
  2 applied operator command
  3 new firefront ignition
  4 fire sensed
  5 fire pruned
  6 target roster entry (once per scored second, per facility)
  7 target on-fire count (same cadence)
  0 footer: the final score summary (absent from aborted logs)

Replay re-simulates from (header, command records) and re-encodes every tick,
asserting byte equality against the file; any mismatch raises with the first
divergent tick and field. Headless runs default to a zeroed creation stamp so
identical inputs give byte-identical files.
"""

from __future__ import annotations

import io
import json
import os
import struct
from dataclasses import dataclass
from typing import BinaryIO, Callable

import yaml

from . import sim
from .scenarios import ScenarioConfig, from_mapping, to_mapping
from .sim import (AppliedCommand, EpisodeSummary, TickEvents, WorldState,
                  agent_state_vector, replay_command, snapshot)
from .world import FacilityKind

MAGIC = b"FCLOG1\n"
FORMAT_VERSION = 1
LOG_SUFFIX = ".fclog"

K_FOOTER = 0
K_AGENT = 1
K_GOAL = 2
K_FRONT = 3
K_SENSED = 4
K_PRUNED = 5
K_TARGET = 6
K_ONFIRE = 7

_STRUCTS = {
    K_AGENT: struct.Struct("<I16d"),
    K_GOAL: struct.Struct("<I7d"),
    K_FRONT: struct.Struct("<III4d"),
    K_SENSED: struct.Struct("<III5d"),
    K_PRUNED: struct.Struct("<III3d"),
    K_TARGET: struct.Struct("<IIBB4HB"),
    K_ONFIRE: struct.Struct("<III"),
}

_FIELDS = {
    K_AGENT: ("tick", "x", "y", "z", "vx", "vy", "vz", "time", "goal_index",
              "kind", "kind_index", "distance", "waiting", "tank",
              "retreating", "patrolling", "patrol_index"),
    K_GOAL: ("tick", "x", "y", "time", "family", "detail", "goal_index", "agent"),
    K_FRONT: ("tick", "region", "spot", "x", "y", "intensity", "ignited_at"),
    K_SENSED: ("tick", "agent", "spot", "x", "y", "intensity", "vx", "vy"),
    K_PRUNED: ("tick", "agent", "spot", "x", "y", "intensity"),
    K_TARGET: ("tick", "facility", "kind", "orientation", "col", "row",
               "width", "height", "ever_on_fire"),
    K_ONFIRE: ("tick", "facility", "count"),
}

_KIND_NAMES = {
    K_AGENT: "agent_state", K_GOAL: "user_goal", K_FRONT: "new_firefront",
    K_SENSED: "sensed_fire", K_PRUNED: "pruned_fire", K_TARGET: "target_roster",
    K_ONFIRE: "target_on_fire",
}

_FACILITY_CODES = {kind: i for i, kind in enumerate(FacilityKind)}
_ORIENTATION_CODES = {None: 0, "horizontal": 1, "vertical": 2}


class LogIntegrityError(Exception):
    pass


class ReplayDivergence(LogIntegrityError):
    def __init__(self, tick: int, detail: str) -> None:
        super().__init__(f"replay diverges at tick {tick}: {detail}")
        self.tick = tick


# --- encoding --------------------------------------------------------------

def _encode(kind: int, *values) -> tuple[int, bytes]:
    return kind, _STRUCTS[kind].pack(*values)


def _reset_group(state: WorldState) -> list[tuple[int, bytes]]:
    records = [_encode(K_AGENT, 0, *agent_state_vector(agent, 0))
               for agent in state.team]
    records += _target_records(state, 0, [0] * len(state.config.facilities))
    return records


def _target_records(state: WorldState, tick: int,
                    counts: list[int]) -> list[tuple[int, bytes]]:
    records = []
    for i, fac in enumerate(state.config.facilities):
        records.append(_encode(
            K_TARGET, tick, i, _FACILITY_CODES[fac.kind],
            _ORIENTATION_CODES[fac.orientation], fac.anchor[0], fac.anchor[1],
            fac.footprint[0], fac.footprint[1],
            1 if state.score.ever_on_fire[i] else 0))
    for i, n in enumerate(counts):
        records.append(_encode(K_ONFIRE, tick, i, n))
    return records


def _tick_group(state: WorldState, events: TickEvents) -> list[tuple[int, bytes]]:
    tick = events.tick
    records = [_encode(K_AGENT, tick, *agent_state_vector(agent, tick))
               for agent in state.team]
    for c in events.commands:
        records.append(_encode(K_GOAL, tick, c.x, c.y, float(c.time),
                               float(c.family), c.detail, float(c.goal_index),
                               float(c.agent)))
    for f in events.new_fronts:
        records.append(_encode(K_FRONT, tick, f.region, f.spot_id,
                               f.x, f.y, f.intensity, f.ignited_at))
    for s in events.sensed:
        records.append(_encode(K_SENSED, tick, s.agent, s.spot_id,
                               s.x, s.y, s.intensity, s.vx, s.vy))
    for p in events.pruned:
        records.append(_encode(K_PRUNED, tick, p.agent, p.spot_id,
                               p.x, p.y, p.intensity))
    if events.record_step and events.facility_counts is not None:
        records += _target_records(state, tick, events.facility_counts)
    return records


def _header_bytes(config: ScenarioConfig, seed: int, created_at: float,
                  recording_hz: int) -> bytes:
    doc = {
        "format": FORMAT_VERSION,
        "created_at": created_at,
        "dt": sim.TICK_SECONDS,
        "recording_hz": recording_hz,
        "seed": seed,
        "config": to_mapping(config),
    }
    return yaml.safe_dump(doc, sort_keys=True).encode("utf-8")


class LogWriter:
    """Recorder that streams a run into a binary log."""

    def __init__(self, stream: BinaryIO, created_at: float = 0.0,
                 recording_hz: int = 10) -> None:
        self._stream = stream
        self._created_at = created_at
        self._recording_hz = recording_hz

    def _write_records(self, records: list[tuple[int, bytes]]) -> None:
        out = bytearray()
        for kind, payload in records:
            out += struct.pack("<I", len(payload) + 1)
            out.append(kind)
            out += payload
        self._stream.write(bytes(out))
        if hasattr(self._stream, "flush"):
            self._stream.flush()

    def on_reset(self, state: WorldState) -> None:
        header = _header_bytes(state.config, state.seed, self._created_at,
                               self._recording_hz)
        self._stream.write(MAGIC)
        self._stream.write(struct.pack("<I", len(header)))
        self._stream.write(header)
        self._write_records(_reset_group(state))

    def on_tick(self, state: WorldState, events: TickEvents) -> None:
        self._write_records(_tick_group(state, events))

    def on_end(self, state: WorldState, summary: EpisodeSummary) -> None:
        payload = yaml.safe_dump({"summary": summary.to_mapping()},
                                 sort_keys=True).encode("utf-8")
        self._write_records([(K_FOOTER, payload)])

    def on_abort(self, state: WorldState) -> None:
        if hasattr(self._stream, "flush"):
            self._stream.flush()


# --- decoding --------------------------------------------------------------

@dataclass(frozen=True)
class RawRecord:
    kind: int
    tick: int
    payload: bytes

    def decode(self) -> dict:
        values = _STRUCTS[self.kind].unpack(self.payload)
        return dict(zip(_FIELDS[self.kind], values))


@dataclass
class LogHeader:
    format: int
    created_at: float
    dt: float
    recording_hz: int
    seed: int
    config: ScenarioConfig


@dataclass
class LogDocument:
    header: LogHeader
    groups: list[tuple[int, list[RawRecord]]]
    footer: dict | None
    truncated: bool


def _read_stream(stream: BinaryIO) -> LogDocument:
    magic = stream.read(len(MAGIC))
    if magic != MAGIC:
        raise LogIntegrityError("not an episode log (bad magic)")
    prefix = stream.read(4)
    if len(prefix) < 4:
        raise LogIntegrityError("truncated header length")
    (hlen,) = struct.unpack("<I", prefix)
    raw_header = stream.read(hlen)
    if len(raw_header) < hlen:
        raise LogIntegrityError("truncated header")
    try:
        doc = yaml.safe_load(raw_header.decode("utf-8"))
        header = LogHeader(
            format=int(doc["format"]),
            created_at=float(doc["created_at"]),
            dt=float(doc["dt"]),
            recording_hz=int(doc["recording_hz"]),
            seed=int(doc["seed"]),
            config=from_mapping(doc["config"]),
        )
    except (KeyError, TypeError, ValueError, yaml.YAMLError) as exc:
        raise LogIntegrityError(f"malformed header: {exc}") from exc
    if header.format != FORMAT_VERSION:
        raise LogIntegrityError(f"unsupported log format {header.format}")

    records: list[RawRecord] = []
    footer = None
    truncated = False
    while True:
        prefix = stream.read(4)
        if len(prefix) == 0:
            break
        if len(prefix) < 4:
            truncated = True
            break
        (n,) = struct.unpack("<I", prefix)
        blob = stream.read(n)
        if len(blob) < n or n < 1:
            truncated = True
            break
        kind, payload = blob[0], blob[1:]
        if kind == K_FOOTER:
            try:
                footer = yaml.safe_load(payload.decode("utf-8"))
            except yaml.YAMLError as exc:
                raise LogIntegrityError(f"malformed footer: {exc}") from exc
            continue
        if kind not in _STRUCTS or len(payload) != _STRUCTS[kind].size:
            raise LogIntegrityError(f"malformed record of kind {kind}")
        (tick,) = struct.unpack_from("<I", payload)
        records.append(RawRecord(kind, tick, payload))

    groups: list[tuple[int, list[RawRecord]]] = []
    for rec in records:
        if groups and groups[-1][0] == rec.tick:
            groups[-1][1].append(rec)
        else:
            if groups and rec.tick < groups[-1][0]:
                raise LogIntegrityError(f"tick order violated at {rec.tick}")
            groups.append((rec.tick, [rec]))
    if truncated and groups:
        groups.pop()  # the final group cannot be proven complete
    if not groups or groups[0][0] != 0:
        raise LogIntegrityError("missing reset group")
    return LogDocument(header=header, groups=groups, footer=footer,
                       truncated=truncated)


def read_log(path: str) -> LogDocument:
    with open(path, "rb") as fh:
        return _read_stream(fh)


def read_log_bytes(data: bytes) -> LogDocument:
    return _read_stream(io.BytesIO(data))


# --- replay ----------------------------------------------------------------

def _applied_from(rec: RawRecord) -> AppliedCommand:
    d = rec.decode()
    return AppliedCommand(x=d["x"], y=d["y"], time=int(d["time"]),
                          family=int(d["family"]), detail=d["detail"],
                          goal_index=int(d["goal_index"]), agent=int(d["agent"]))


def _first_divergence(tick: int, index: int, logged: RawRecord,
                      regenerated: tuple[int, bytes]) -> ReplayDivergence:
    kind, payload = regenerated
    if logged.kind != kind:
        return ReplayDivergence(tick, f"record {index} kind {_KIND_NAMES.get(logged.kind)} "
                                      f"vs {_KIND_NAMES.get(kind)}")
    logged_vals = logged.decode()
    new_vals = dict(zip(_FIELDS[kind], _STRUCTS[kind].unpack(payload)))
    for name in _FIELDS[kind]:
        if logged_vals[name] != new_vals[name]:
            return ReplayDivergence(
                tick, f"record {index} ({_KIND_NAMES[kind]}) field {name}: "
                      f"logged {logged_vals[name]!r}, replayed {new_vals[name]!r}")
    return ReplayDivergence(tick, f"record {index} differs in padding")


def _check_group(tick: int, logged: list[RawRecord],
                 regenerated: list[tuple[int, bytes]]) -> None:
    for i, (rec, new) in enumerate(zip(logged, regenerated)):
        if rec.kind != new[0] or rec.payload != new[1]:
            raise _first_divergence(tick, i, rec, new)
    if len(logged) != len(regenerated):
        raise ReplayDivergence(tick, f"{len(logged)} records logged, "
                                     f"{len(regenerated)} replayed")


@dataclass
class ReplayResult:
    header: LogHeader
    ticks: int
    summary: EpisodeSummary
    footer: dict | None
    truncated: bool


def replay(source: str | LogDocument,
           on_snapshot: Callable[[int, dict], None] | None = None,
           include_hidden: bool = False) -> ReplayResult:
    """Re-execute a log and assert it matches, tick by tick.

    `on_snapshot` receives (tick, scene) for the reset state and every
    replayed tick. Raises ReplayDivergence on the first mismatch.
    """
    doc = read_log(source) if isinstance(source, str) else source
    state = sim.reset(doc.header.config, seed=doc.header.seed)
    _check_group(0, doc.groups[0][1], _reset_group(state))
    if on_snapshot is not None:
        on_snapshot(0, snapshot(state, include_hidden=include_hidden))

    for tick, group in doc.groups[1:]:
        if tick != state.tick + 1:
            raise ReplayDivergence(tick, f"expected tick {state.tick + 1} next")
        commands = [replay_command(_applied_from(rec))
                    for rec in group if rec.kind == K_GOAL]
        result = sim.step(state, commands)
        _check_group(tick, group, _tick_group(state, result.events))
        if on_snapshot is not None:
            on_snapshot(tick, snapshot(state, include_hidden=include_hidden))

    return ReplayResult(header=doc.header, ticks=state.tick,
                        summary=sim.summarize(state), footer=doc.footer,
                        truncated=doc.truncated)


@dataclass
class StatsReport:
    scenario: str
    seed: int
    ticks: int
    truncated: bool
    footer_present: bool
    summary: EpisodeSummary

    def to_mapping(self) -> dict:
        out = self.summary.to_mapping()
        out.update({"verified_ticks": self.ticks, "truncated": self.truncated,
                    "footer_present": self.footer_present})
        return out


def stats(source: str | LogDocument) -> StatsReport:
    """Recompute every score from the raw record stream and cross-check."""
    result = replay(source)
    if result.footer is not None:
        recomputed = result.summary.to_mapping()
        logged = result.footer.get("summary", {})
        if logged != recomputed:
            diffs = [k for k in recomputed
                     if logged.get(k) != recomputed[k]]
            raise LogIntegrityError(
                f"footer summary disagrees with recomputation on: {', '.join(diffs)}")
    return StatsReport(
        scenario=result.header.config.name,
        seed=result.header.seed,
        ticks=result.ticks,
        truncated=result.truncated,
        footer_present=result.footer is not None,
        summary=result.summary,
    )


# --- frame export ----------------------------------------------------------

def export_frames(source: str | LogDocument, every_n_ticks: int,
                  out_dir: str, interpolate: int = 1) -> list[str]:
    """Write self-contained snapshot documents sampled every N ticks.

    Frames cover the half-open tick range [0, total): the reset scene is
    frame zero and the final tick is only emitted if the stride lands on it
    short of the end. `interpolate` > 1 adds evenly spaced subframes with
    agent kinematics advanced linearly (fire and scores repeat), giving a
    smoother playback rate than the simulation tick.
    """
    if every_n_ticks < 1:
        raise ValueError("every_n_ticks must be positive")
    if interpolate < 1:
        raise ValueError("interpolate must be positive")
    os.makedirs(out_dir, exist_ok=True)
    collected: list[tuple[int, dict]] = []

    result = replay(source, on_snapshot=lambda t, s: collected.append((t, s))
                    if t % every_n_ticks == 0 else None)
    total = result.ticks
    names: list[str] = []
    index = 0
    for tick, scene in collected:
        if tick >= total and tick != 0:
            continue  # half-open range; the end state is not a frame
        variants = [scene]
        for k in range(1, interpolate):
            shifted = json.loads(json.dumps(scene))
            frac = sim.TICK_SECONDS * k / interpolate
            for agent in shifted["agents"]:
                agent["x"] += agent["vx"] * frac
                agent["y"] += agent["vy"] * frac
            shifted["subframe"] = k
            variants.append(shifted)
        for scene_k in variants:
            name = f"frame_{index:06d}.json"
            with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
                json.dump(scene_k, fh, sort_keys=True)
            names.append(name)
            index += 1

    manifest = {
        "frames": names,
        "every_n_ticks": every_n_ticks,
        "interpolate": interpolate,
        "ticks": total,
        "scenario": result.header.config.name,
        "seed": result.header.seed,
        "summary": result.summary.to_mapping(),
    }
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
    return names


# --- command stream extraction ---------------------------------------------

def command_stream(source: str | LogDocument) -> list[tuple[int, AppliedCommand]]:
    """Every applied operator command, tick-stamped, in log order."""
    doc = read_log(source) if isinstance(source, str) else source
    return [(tick, _applied_from(rec))
            for tick, group in doc.groups
            for rec in group if rec.kind == K_GOAL]


def reproduce_log(source: str | LogDocument) -> bytes:
    """Re-run a log's command stream headlessly; byte-identical by contract."""
    from .policies import ScriptedPolicy, ScriptEntry

    doc = read_log(source) if isinstance(source, str) else source
    entries = [ScriptEntry(tick=tick, command=replay_command(cmd))
               for tick, cmd in command_stream(doc)]
    buffer = io.BytesIO()
    writer = LogWriter(buffer, created_at=doc.header.created_at,
                       recording_hz=doc.header.recording_hz)
    sim.run_headless(doc.header.config, policy=ScriptedPolicy(entries),
                     seed=doc.header.seed, recorder=writer)
    return buffer.getvalue()
