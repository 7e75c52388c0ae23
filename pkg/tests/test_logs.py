import io
import json
import struct

import pytest

from firecommander.logs import (K_AGENT, K_FOOTER, K_GOAL, K_ONFIRE, K_TARGET,
                                MAGIC, LogIntegrityError, LogWriter,
                                ReplayDivergence, command_stream,
                                export_frames, read_log, read_log_bytes,
                                replay, reproduce_log, stats)
from firecommander.policies import ScriptedPolicy, parse_script
from firecommander.sim import run_headless

from conftest import small_scenario

SCRIPT = """
- {tick: 1, select: 2}
- {tick: 5, goal: [400.0, 410.0], agent: 1}
- {tick: 9, goal: [150.0, 320.0], patrol: true, agent: 2}
- {tick: 12, altitude: up, agent: 1}
"""


def _record_bytes(scenario=None, **writer_kwargs) -> bytes:
    config = scenario or small_scenario()
    buffer = io.BytesIO()
    writer = LogWriter(buffer, **writer_kwargs)
    run_headless(config, ScriptedPolicy(parse_script(SCRIPT)),
                 recorder=writer)
    return buffer.getvalue()


@pytest.fixture(scope="module")
def log_bytes() -> bytes:
    return _record_bytes()


def test_header_round_trip(log_bytes, scenario):
    doc = read_log_bytes(log_bytes)
    h = doc.header
    assert (h.format, h.dt, h.recording_hz) == (1, 0.1, 10)
    assert h.seed == scenario.seed
    assert h.config == scenario
    assert h.created_at == 0.0
    assert not doc.truncated
    assert doc.footer is not None and "summary" in doc.footer


def test_created_at_is_recorded():
    doc = read_log_bytes(_record_bytes(created_at=123.5))
    assert doc.header.created_at == 123.5


def test_rejects_foreign_bytes():
    with pytest.raises(LogIntegrityError, match="magic"):
        read_log_bytes(b"PNG....not a log")
    with pytest.raises(LogIntegrityError, match="header"):
        read_log_bytes(MAGIC + b"\x10")


def test_rejects_unknown_format_version(log_bytes):
    doctored = log_bytes.replace(b"\nformat: 1\n", b"\nformat: 9\n", 1)
    with pytest.raises(LogIntegrityError, match="format 9"):
        read_log_bytes(doctored)


def test_rejects_malformed_record(log_bytes):
    tail = struct.pack("<I", 6) + bytes([99]) + b"xxxxx"
    with pytest.raises(LogIntegrityError, match="kind 99"):
        read_log_bytes(log_bytes + tail)


def test_group_layout(log_bytes, scenario):
    doc = read_log_bytes(log_bytes)
    ticks = [tick for tick, _ in doc.groups]
    assert ticks == list(range(len(ticks)))  # reset group plus every tick

    reset_group = doc.groups[0][1]
    kinds = [r.kind for r in reset_group]
    assert kinds.count(K_AGENT) == len(scenario.agents)
    assert kinds.count(K_TARGET) == len(scenario.facilities)
    assert kinds.count(K_ONFIRE) == len(scenario.facilities)

    for tick, group in doc.groups[1:]:
        assert [r.kind for r in group[:len(scenario.agents)]] \
            == [K_AGENT] * len(scenario.agents)
        assert all(r.tick == tick for r in group)
        has_targets = any(r.kind == K_TARGET for r in group)
        assert has_targets == (tick % 10 == 0)


def test_record_decode_names_fields(log_bytes):
    doc = read_log_bytes(log_bytes)
    agent_row = doc.groups[1][1][0].decode()
    for field in ("x", "y", "z", "vx", "vy", "vz", "tick", "time",
                  "goal_index", "kind", "kind_index", "distance", "waiting",
                  "tank", "retreating", "patrolling", "patrol_index"):
        assert field in agent_row, field
    goal_rows = [r for _, g in doc.groups for r in g if r.kind == K_GOAL]
    decoded = goal_rows[0].decode()
    assert set(decoded) == {"tick", "x", "y", "time", "family", "detail",
                            "goal_index", "agent"}


def test_replay_verifies_bit_exact(log_bytes):
    scenes = []
    result = replay(read_log_bytes(log_bytes),
                    on_snapshot=lambda t, s: scenes.append((t, s)))
    assert result.ticks == len(scenes) - 1  # reset scene plus one per tick
    assert scenes[0][0] == 0
    assert not result.truncated
    assert result.footer["summary"] == result.summary.to_mapping()


def test_truncated_log_drops_unprovable_tail(log_bytes):
    doc = read_log_bytes(log_bytes[:-37])  # cut lands inside the footer
    assert doc.truncated and doc.footer is None
    full = read_log_bytes(log_bytes)
    assert len(doc.groups) == len(full.groups) - 1
    result = replay(doc)
    assert result.truncated
    assert result.ticks == full.groups[-1][0] - 1


def test_corrupted_record_is_named(log_bytes):
    # Walk the framing to the first agent row of tick 5 and flip one byte
    # inside its x coordinate.
    offset = len(MAGIC)
    (hlen,) = struct.unpack_from("<I", log_bytes, offset)
    offset += 4 + hlen
    target = None
    while offset < len(log_bytes):
        (n,) = struct.unpack_from("<I", log_bytes, offset)
        kind = log_bytes[offset + 4]
        payload_at = offset + 5
        if kind == K_AGENT:
            (tick,) = struct.unpack_from("<I", log_bytes, payload_at)
            if tick == 5:
                target = payload_at + 4  # first f64 of the row
                break
        offset += 4 + n
    assert target is not None
    doctored = bytearray(log_bytes)
    doctored[target + 6] ^= 0x41
    with pytest.raises(ReplayDivergence) as exc:
        replay(read_log_bytes(bytes(doctored)))
    assert exc.value.tick == 5
    message = str(exc.value)
    assert "agent" in message.lower() and "field x" in message


def test_stats_cross_checks_footer(log_bytes):
    report = stats(read_log_bytes(log_bytes))
    assert report.footer_present and not report.truncated
    mapping = report.to_mapping()
    assert mapping["verified_ticks"] == report.ticks
    assert mapping["scenario"] == "small"

    tampered = read_log_bytes(log_bytes)
    tampered.footer["summary"]["pruned"] += 1
    with pytest.raises(LogIntegrityError, match="pruned"):
        stats(tampered)


def test_stats_tolerates_missing_footer(log_bytes):
    doc = read_log_bytes(log_bytes[:-37])
    report = stats(doc)
    assert not report.footer_present and report.truncated


def test_command_stream_matches_script(log_bytes):
    stream = command_stream(read_log_bytes(log_bytes))
    by_tick = {tick: cmd for tick, cmd in stream}
    assert set(by_tick) == {1, 5, 9, 12}
    assert (by_tick[5].x, by_tick[5].y) == (400.0, 410.0)
    assert by_tick[9].detail == 1.0  # patrol flag
    assert all(tick == cmd.time for tick, cmd in stream)


def test_export_frames_samples_and_interpolates(log_bytes, tmp_path):
    plain = tmp_path / "plain"
    names = export_frames(read_log_bytes(log_bytes), 10, str(plain))
    manifest = json.loads((plain / "manifest.json").read_text())
    total = manifest["ticks"]
    expected = (total - 1) // 10 + 1  # half-open range, frame 0 included
    assert len(names) == expected
    assert manifest["frames"] == names
    first = json.loads((plain / names[0]).read_text())
    assert first["tick"] == 0 and "agents" in first

    smooth = tmp_path / "smooth"
    doubled = export_frames(read_log_bytes(log_bytes), 10, str(smooth),
                            interpolate=2)
    assert len(doubled) == 2 * expected
    sub = json.loads((smooth / doubled[1]).read_text())
    assert sub["subframe"] == 1

    with pytest.raises(ValueError):
        export_frames(read_log_bytes(log_bytes), 0, str(tmp_path / "x"))


def test_reproduce_log_is_byte_identical(log_bytes, tmp_path):
    assert reproduce_log(read_log_bytes(log_bytes)) == log_bytes
    path = tmp_path / "episode.fclog"
    path.write_bytes(log_bytes)
    assert reproduce_log(str(path)) == log_bytes
    assert read_log(str(path)).footer is not None
