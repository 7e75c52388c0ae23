"""End-to-end acceptance checks, one test per shipping requirement.

Each test pins its own tolerances and, where the requirement includes a
runtime budget, asserts it. Numeric oracles are recomputed inline rather than
imported so a regression in the library cannot hide inside the check.
"""

import io
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from firecommander.agents import (AgentKind, AgentRuntime, AgentSpec,
                                  prune_hit, sense_roll)
from firecommander.fire import (FireModelParams, Firespot, SpotState,
                                flame_intensity, spread_rate, wind_direction)
from firecommander.logs import (LogWriter, command_stream, read_log_bytes,
                                replay, reproduce_log)
from firecommander.policies import SweepPolicy
from firecommander.scenarios import preset, preset_ids, save, validate
from firecommander.scoring import (accumulate_negative, expected_negative_reward,
                                   facility_score, final_evaluation,
                                   negative_reward_ratio, ratio_scores)
from firecommander.sim import run_headless, summarize
from firecommander.world import Facility, FacilityKind, GridWorld

from conftest import small_scenario
from test_scenarios import GOLDEN_CATALOG, _profile


# --- closed-form physics ----------------------------------------------------

def test_spread_rate_matches_hand_computed_oracle():
    started = time.perf_counter()

    def oracle(fuel, wind):
        lb = 0.936 * math.exp(0.256 * wind) + 0.461 * math.exp(-0.154 * wind) - 0.397
        gb = max(lb * lb - 1.0, 0.0)
        return fuel * (1.0 - lb / (lb + math.sqrt(gb)))

    for fuel in (2.0, 10.0, 15.0):
        assert spread_rate(fuel, 0.0) == 0.0  # exact, not approximate
        for wind in (2.0, 5.0, 10.0):
            got = spread_rate(fuel, wind)
            want = oracle(fuel, wind)
            assert got == pytest.approx(want, rel=1e-9), (fuel, wind)
    assert time.perf_counter() - started < 1.0


def test_noise_free_drift_aligns_with_wind():
    from firecommander.fire import step_spot

    started = time.perf_counter()
    params = FireModelParams(velocity_noise_sigma=0.0)
    rng = np.random.default_rng(0)
    for azimuth in (0.0, 45.0, 90.0, 135.0, 225.0, 315.0):
        spot = Firespot(spot_id=0, region_index=0, x=0.0, y=0.0,
                        vx=0.0, vy=0.0, ignited_at=0.0,
                        ref_intensity=1e6, ref_time=0.0,
                        fuel=10.0, wind_speed=5.0, wind_azimuth=azimuth)
        for k in range(1000):
            step_spot(spot, 0.1, (k + 1) * 0.1, rng, params)
        norm = math.hypot(spot.x, spot.y)
        ux, uy = spot.x / norm, spot.y / norm
        dx, dy = wind_direction(azimuth)
        assert abs(ux - dx) <= 1e-12 and abs(uy - dy) <= 1e-12, azimuth
    assert time.perf_counter() - started < 1.0


def test_intensity_decay_matches_closed_form_after_ten_seconds():
    from firecommander.fire import step_spot

    rng = np.random.default_rng(3)
    for rate in (0.0, 0.05, 1.0):
        params = FireModelParams(decay_rate=rate, intensity_floor=0.0)
        ref = flame_intensity(6.0, 30.0)
        spot = Firespot(spot_id=0, region_index=0, x=0.0, y=0.0,
                        vx=0.0, vy=0.0, ignited_at=0.0,
                        ref_intensity=ref, ref_time=0.0,
                        fuel=10.0, wind_speed=5.0, wind_azimuth=45.0)
        for k in range(100):
            step_spot(spot, 0.1, (k + 1) * 0.1, rng, params)
        got = spot.intensity(10.0, params)
        want = ref * math.exp(-rate * 10.0 / 10.0)
        if rate == 0.0:
            assert got == ref  # bit-identical, no drift allowed
        else:
            assert got == pytest.approx(want, rel=1e-9)


# --- stochastic rates -------------------------------------------------------

def _craft(kind: AgentKind, z: float, confidence: float = 0.9) -> AgentRuntime:
    spec = AgentSpec(kind, z_min=10.0, z_max=100.0, tank_capacity=10,
                     confidence=confidence)
    return AgentRuntime(spec=spec, global_index=1, kind_index=1,
                        x=0.0, y=0.0, z=z, battery=500.0, tank=10)


def test_sensing_rates_at_altitude_band_edges():
    started = time.perf_counter()
    rng = np.random.default_rng(7)
    trials = 10_000

    floor_agent = _craft(AgentKind.PERCEPTION, z=10.0)
    hits = sum(sense_roll(floor_agent, rng) for _ in range(trials))
    assert hits == trials  # certain at the sensing floor

    ceiling_agent = _craft(AgentKind.PERCEPTION, z=100.0)
    hits = sum(sense_roll(ceiling_agent, rng) for _ in range(trials))
    assert abs(hits / trials - 0.40) <= 0.02
    assert time.perf_counter() - started < 5.0


def test_prune_success_rate_matches_confidence():
    started = time.perf_counter()
    rng = np.random.default_rng(11)
    params = FireModelParams()
    agent = _craft(AgentKind.ACTION, z=50.0, confidence=0.9)
    trials = 10_000
    pruned = 0
    for _ in range(trials):
        spot = Firespot(spot_id=0, region_index=0, x=0.0, y=0.0,
                        vx=0.0, vy=0.0, ignited_at=0.0,
                        ref_intensity=5000.0, ref_time=0.0,
                        fuel=10.0, wind_speed=5.0, wind_azimuth=45.0,
                        state=SpotState.SENSED)
        if prune_hit(agent, spot, 0.0, rng, params):
            pruned += 1
            assert spot.state is SpotState.PRUNED
    assert abs(pruned / trials - 0.90) <= 0.01
    assert time.perf_counter() - started < 5.0


# --- scoring ----------------------------------------------------------------

def test_score_identities_and_worked_examples():
    rng = np.random.default_rng(13)
    for _ in range(100):
        spawned = int(rng.integers(0, 60))
        sensed = int(rng.integers(0, spawned + 1))
        pruned = int(rng.integers(0, sensed + 1))
        got = ratio_scores(spawned, sensed, pruned)
        if spawned == 0:
            want = (100.0, 100.0, 100.0)
        else:
            want = (pruned / spawned * 100.0,
                    sensed / spawned * 100.0,
                    pruned / sensed * 100.0 if sensed else 0.0)
        assert got == want  # exact, same arithmetic order

    for duration in (0, 1, 3, 180):
        loop = sum(0.1 * 10 * t for t in range(1, duration + 1))
        assert expected_negative_reward(10, duration) == pytest.approx(loop, rel=1e-12)

    # Two burning spots, both inside the hospital, one scored second.
    config = small_scenario()
    from firecommander.sim import reset
    state = reset(config)
    hospital = Facility(FacilityKind.HOSPITAL, (4, 4))
    facilities = [hospital]
    state.score.ever_on_fire = [False]
    inc = accumulate_negative(state.score, 2, facilities, [2])
    assert inc == pytest.approx(4.2, abs=1e-12)

    final, verbal = final_evaluation(80.0, 70.0, 100.0, 10.0)
    assert final == pytest.approx(220.0)
    assert verbal == "Almost There!"
    assert negative_reward_ratio(0.0, 0.0) == 0.0
    assert facility_score([]) == 100.0


# --- catalog ----------------------------------------------------------------

def test_preset_catalog_matches_published_tables():
    assert set(preset_ids()) == set(GOLDEN_CATALOG)
    for sid, row in GOLDEN_CATALOG.items():
        config = preset(sid)
        assert _profile(config) == row, f"preset {sid}"
        assert validate(config).ok, f"preset {sid}"


# --- determinism, replay and conservation -----------------------------------

class InvariantProbe:
    """Recorder that checks population and resource invariants every tick."""

    def __init__(self):
        self.violations: list[str] = []
        self._battery: dict[int, float] = {}
        self._tank: dict[int, float] = {}

    def on_reset(self, state):
        for a in state.team:
            self._battery[a.global_index] = a.battery
            self._tank[a.global_index] = a.tank

    def on_tick(self, state, events):
        c = state.counts()
        if c.spawned != c.active + c.sensed_now + c.pruned + c.burnt:
            self.violations.append(f"tick {state.tick}: population leak")
        for a in state.team:
            if not 0.0 <= a.battery <= a.spec.battery_capacity + 1e-9:
                self.violations.append(
                    f"tick {state.tick}: agent {a.global_index} battery {a.battery}")
            if not 0 <= a.tank <= a.spec.tank_capacity:
                self.violations.append(
                    f"tick {state.tick}: agent {a.global_index} tank {a.tank}")
            if a.battery > self._battery[a.global_index] + 1e-9 and a.deployed:
                self.violations.append(
                    f"tick {state.tick}: agent {a.global_index} gained battery aloft")
            self._battery[a.global_index] = a.battery
            self._tank[a.global_index] = a.tank

    def on_end(self, state, summary): ...

    def on_abort(self, state): ...


class TeeRecorder:
    def __init__(self, *parts):
        self.parts = parts

    def on_reset(self, state):
        for p in self.parts:
            p.on_reset(state)

    def on_tick(self, state, events):
        for p in self.parts:
            p.on_tick(state, events)

    def on_end(self, state, summary):
        for p in self.parts:
            p.on_end(state, summary)

    def on_abort(self, state):
        for p in self.parts:
            p.on_abort(state)


@pytest.fixture(scope="module")
def determinism_suite():
    started = time.perf_counter()
    runs = []
    for sid in ("practice", "1", "7", "24"):
        config = preset(sid)
        for seed in (1, 2, 3):
            probe = InvariantProbe()
            first = io.BytesIO()
            run_headless(config, SweepPolicy(), seed=seed,
                         recorder=TeeRecorder(LogWriter(first), probe))
            second = io.BytesIO()
            run_headless(config, SweepPolicy(), seed=seed,
                         recorder=LogWriter(second))
            runs.append({
                "id": f"{sid}/seed{seed}",
                "first": first.getvalue(),
                "second": second.getvalue(),
                "violations": probe.violations,
            })
    return {"runs": runs, "elapsed": time.perf_counter() - started}


def test_runs_are_reproducible_and_replayable(determinism_suite):
    for run in determinism_suite["runs"]:
        assert run["first"] == run["second"], f"{run['id']}: logs differ"
        result = replay(read_log_bytes(run["first"]))  # raises on divergence
        assert result.ticks > 0
        assert result.footer["summary"] == result.summary.to_mapping()
    assert determinism_suite["elapsed"] < 60.0


def test_population_and_resource_invariants_hold_every_tick(determinism_suite):
    for run in determinism_suite["runs"]:
        assert run["violations"] == [], run["id"]


# --- command line -----------------------------------------------------------

def test_cli_exit_codes_end_to_end(tmp_path):
    def cli(*args):
        return subprocess.run([sys.executable, "-m", "firecommander", *args],
                              capture_output=True, text=True, timeout=120)

    scenario_path = tmp_path / "tiny.yaml"
    save(small_scenario(), str(scenario_path))
    log_path = tmp_path / "tiny.fclog"

    assert cli("presets").returncode == 0
    assert cli("presets", "--json").returncode == 0
    assert cli("validate", str(scenario_path)).returncode == 0
    assert cli("run", str(scenario_path), "--log", str(log_path)).returncode == 0
    assert cli("replay", str(log_path)).returncode == 0
    assert cli("stats", str(log_path)).returncode == 0
    assert cli("replay", str(log_path), "--frames",
               str(tmp_path / "frames"), "--every", "200").returncode == 0
    assert cli("serve", "--smoke", "--port", "8497").returncode == 0

    assert cli("run", "no-such-scenario").returncode == 2
    assert cli("run", str(scenario_path), "--policy", "bogus").returncode == 2
    assert cli("presets", "--show", "99").returncode == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text(scenario_path.read_text().replace("wind_speed: 5.0",
                                                     "wind_speed: 50.0"))
    assert cli("validate", str(bad)).returncode == 1
    broken = tmp_path / "broken.fclog"
    broken.write_bytes(b"not a log at all")
    assert cli("replay", str(broken)).returncode == 1
    # Missing input files are argument mistakes, not operation failures.
    assert cli("stats", str(tmp_path / "missing.fclog")).returncode == 2


# --- live session transparency ----------------------------------------------

def test_live_session_log_reproduces_headlessly(tmp_path):
    fastapi = pytest.importorskip("fastapi")
    del fastapi
    from fastapi.testclient import TestClient

    from firecommander.scenarios import to_mapping
    from firecommander.server import create_app

    config = small_scenario(world=GridWorld.from_units(800.0, 60))
    app = create_app(out_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/session") as ws:
            ws.send_json({"type": "load_scenario", "config": to_mapping(config),
                          "seed": 6, "ticks_per_second": 100000})
            frame = ws.receive_json()
            assert frame["type"] == "scenario_loaded"
            ws.send_json({"type": "command",
                          "command": {"action": "goal", "x": 420.0, "y": 400.0,
                                      "patrol": True, "agent": 1}})
            ws.send_json({"type": "start"})
            sent_more = False
            while True:
                msg = ws.receive_json()
                if msg["type"] == "state" and msg["tick"] > 40 and not sent_more:
                    sent_more = True  # a mid-run order, timing up to the OS
                    ws.send_json({"type": "command",
                                  "command": {"action": "goal", "x": 380.0,
                                              "y": 430.0, "agent": 2}})
                if msg["type"] == "finished":
                    break
            ws.send_json({"type": "save_playback", "name": "live.fclog"})
            while True:
                msg = ws.receive_json()
                if msg["type"] == "saved":
                    break
            ws.send_json({"type": "quit"})

    recorded = (tmp_path / "live.fclog").read_bytes()
    doc = read_log_bytes(recorded)
    assert command_stream(doc), "session recorded no operator commands"
    assert reproduce_log(doc) == recorded


# --- summary sanity over the catalog ----------------------------------------

def test_every_preset_runs_headlessly_for_a_minute():
    for sid in ("practice", "5", "13", "21"):
        summary = run_headless(preset(sid), max_ticks=600)
        mapping = summary.to_mapping()
        json.dumps(mapping)
        assert mapping["spawned"] >= GOLDEN_CATALOG[sid][6][0]
