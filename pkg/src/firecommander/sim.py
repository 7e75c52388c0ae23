"""Headless episode engine: reset, tick, observe, summarize.

Every tick runs the same eight phases in order: apply operator commands,
ignite due regions, advance and merge firespots, advance agents, sense,
prune, score, emit events. All randomness flows through one seeded generator
consumed in that fixed order, so a (config, seed, command stream) triple
fully determines the trace.

Commands take effect at the tick after they are issued; the engine never
consults wall-clock time.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

import numpy as np

from .agents import (AgentKind, AgentRuntime, Trajectory, TrajectoryMode,
                     change_altitude, estimated_battery_at_chain_end,
                     fov_halfwidth, in_fov, prune_hit, sense_roll, start_retreat,
                     step_agent)
from .fire import Firespot, LastSeen, SpotState, ignite_region, merge_coincident, step_spot
from .scenarios import ScenarioConfig, validate
from .scoring import (ScoreState, accumulate_negative, expected_negative_reward,
                      facility_score, final_evaluation, negative_reward_ratio,
                      ratio_scores)
from .world import CELL_UNITS, Facility, cell_name

log = logging.getLogger("firecommander")

TICK_SECONDS = 0.1
RECORD_EVERY_TICKS = 10  # scoring and target records run at 1 Hz


# --- operator commands -----------------------------------------------------

@dataclass(frozen=True)
class SelectAgent:
    agent: int  # 1-based roster index


@dataclass(frozen=True)
class SetGoal:
    x: float
    y: float
    patrol: bool = False
    agent: int | None = None  # None targets the currently selected agent


@dataclass(frozen=True)
class Altitude:
    direction: int  # +1 up, -1 down
    agent: int | None = None


Command = SelectAgent | SetGoal | Altitude

# Command families as logged (UserGoal field 3).
FAMILY_PLANAR = 0
FAMILY_VERTICAL = 1
FAMILY_SELECT = 2


@dataclass(frozen=True)
class AppliedCommand:
    """One applied command in logged field order."""

    x: float
    y: float
    time: int  # application tick
    family: int
    detail: float  # patrol flag / vertical direction / 0
    goal_index: int
    agent: int


@dataclass(frozen=True)
class FrontEvent:
    region: int
    spot_id: int
    x: float
    y: float
    intensity: float
    ignited_at: float


@dataclass(frozen=True)
class SenseEvent:
    agent: int
    spot_id: int
    x: float
    y: float
    intensity: float
    vx: float
    vy: float


@dataclass(frozen=True)
class PruneEvent:
    agent: int
    spot_id: int
    x: float
    y: float
    intensity: float


@dataclass
class TickEvents:
    tick: int
    commands: list[AppliedCommand] = field(default_factory=list)
    new_fronts: list[FrontEvent] = field(default_factory=list)
    sensed: list[SenseEvent] = field(default_factory=list)
    pruned: list[PruneEvent] = field(default_factory=list)
    record_step: bool = False
    facility_counts: list[int] | None = None
    negative_increment: float = 0.0


@dataclass
class StepResult:
    reward: float
    done: bool
    events: TickEvents


# --- state -----------------------------------------------------------------

@dataclass
class Counts:
    spawned: int = 0  # tracked spot entities (merges collapse parents)
    active: int = 0  # burning, unseen
    sensed_now: int = 0  # burning, known
    ever_sensed: int = 0
    pruned: int = 0
    burnt: int = 0

    @property
    def live(self) -> int:
        return self.active + self.sensed_now

    @property
    def score_active(self) -> int:
        return self.active + self.sensed_now


@dataclass
class WorldState:
    config: ScenarioConfig
    seed: int
    rng: np.random.Generator
    team: list[AgentRuntime]
    spots: dict[int, Firespot]
    region_ignited: list[bool]
    score: ScoreState
    base_xy: tuple[float, float]
    tick: int = 0
    next_spot_id: int = 0
    selected: int = 1
    terminated: bool = False
    dropped_commands: int = 0
    reward_total: float = 0.0

    @property
    def clock(self) -> float:
        return self.tick * TICK_SECONDS

    @property
    def duration_ticks(self) -> int:
        return self.config.world.duration * RECORD_EVERY_TICKS

    def live_spots(self) -> list[Firespot]:
        return [s for s in self.spots.values() if s.state.live]

    def counts(self) -> Counts:
        c = Counts(spawned=len(self.spots))
        for s in self.spots.values():
            if s.state is SpotState.ACTIVE:
                c.active += 1
            elif s.state is SpotState.SENSED:
                c.sensed_now += 1
            elif s.state is SpotState.PRUNED:
                c.pruned += 1
            else:
                c.burnt += 1
            if s.ever_sensed:
                c.ever_sensed += 1
        return c


def reset(config: ScenarioConfig, seed: int | None = None) -> WorldState:
    """Validated initial state: agents parked at the base, no fire yet.

    Regions with zero delay ignite during the first tick, not here.
    """
    report = validate(config)
    if not report.ok:
        details = "; ".join(v.message for v in report.violations)
        raise ValueError(f"invalid scenario: {details}")

    actual_seed = config.seed if seed is None else seed
    base = config.base()
    base_xy = (base.anchor[0] * CELL_UNITS, base.anchor[1] * CELL_UNITS)

    team = []
    kind_counters: dict[AgentKind, int] = {}
    for i, spec in enumerate(config.agents):
        kind_counters[spec.kind] = kind_counters.get(spec.kind, 0) + 1
        team.append(AgentRuntime(
            spec=spec,
            global_index=i + 1,
            kind_index=kind_counters[spec.kind],
            x=base_xy[0], y=base_xy[1], z=spec.z_min,
            battery=spec.battery_capacity,
            tank=spec.tank_capacity,
        ))

    score = ScoreState(
        params=config.scoring,
        expected_negative=expected_negative_reward(
            config.total_firefronts, config.world.duration,
            config.scoring.propagation_weight),
        ever_on_fire=[False] * len(config.facilities),
    )

    return WorldState(
        config=config,
        seed=actual_seed,
        rng=np.random.default_rng(actual_seed),
        team=team,
        spots={},
        region_ignited=[False] * len(config.regions),
        score=score,
        base_xy=base_xy,
    )


# --- command application ---------------------------------------------------

def _apply_command(state: WorldState, cmd: Command, tick: int) -> AppliedCommand | None:
    """Apply one command; None means it was dropped (with a diagnostic)."""
    team = state.team
    if isinstance(cmd, SelectAgent):
        if not 1 <= cmd.agent <= len(team):
            log.info("tick %d: dropped selection of agent %d (roster has %d)",
                     tick, cmd.agent, len(team))
            state.dropped_commands += 1
            return None
        state.selected = cmd.agent
        agent = team[cmd.agent - 1]
        return AppliedCommand(agent.x, agent.y, tick, FAMILY_SELECT, 0.0, 0, cmd.agent)

    index = cmd.agent if cmd.agent is not None else state.selected
    if not 1 <= index <= len(team):
        log.info("tick %d: dropped command for missing agent %d", tick, index)
        state.dropped_commands += 1
        return None
    agent = team[index - 1]
    if agent.retreating:
        log.info("tick %d: agent %d is retreating, command dropped", tick, index)
        state.dropped_commands += 1
        return None

    if isinstance(cmd, SetGoal):
        size = state.config.world.size_units
        x = min(max(cmd.x, 0.0), size)
        y = min(max(cmd.y, 0.0), size)
        if not agent.deployed:
            agent.deployed = True
            agent.trajectory = Trajectory()
        agent.trajectory.goals.append((x, y))
        agent.trajectory.mode = TrajectoryMode.PATROL if cmd.patrol else TrajectoryMode.NORMAL
        agent.dwell_remaining = None
        goal_index = len(agent.trajectory.goals) - 1
        return AppliedCommand(x, y, tick, FAMILY_PLANAR,
                              1.0 if cmd.patrol else 0.0, goal_index, index)

    if isinstance(cmd, Altitude):
        if agent.kind is AgentKind.ACTION:
            log.info("tick %d: agent %d flies fixed altitude, command dropped", tick, index)
            state.dropped_commands += 1
            return None
        change_altitude(agent, cmd.direction)
        return AppliedCommand(agent.x, agent.y, tick, FAMILY_VERTICAL,
                              float(1 if cmd.direction > 0 else -1), 0, index)

    raise TypeError(f"unknown command {cmd!r}")


def replay_command(applied: AppliedCommand) -> Command:
    """Reconstruct the explicit-target command an applied record describes."""
    if applied.family == FAMILY_SELECT:
        return SelectAgent(agent=applied.agent)
    if applied.family == FAMILY_PLANAR:
        return SetGoal(x=applied.x, y=applied.y, patrol=applied.detail != 0.0,
                       agent=applied.agent)
    if applied.family == FAMILY_VERTICAL:
        return Altitude(direction=1 if applied.detail > 0 else -1, agent=applied.agent)
    raise ValueError(f"unknown command family {applied.family}")


# --- tick ------------------------------------------------------------------

def _facility_live_counts(state: WorldState) -> list[int]:
    counts = [0] * len(state.config.facilities)
    size = state.config.world.size_units
    for spot in state.spots.values():
        if not spot.state.live:
            continue
        if not (0.0 <= spot.x <= size and 0.0 <= spot.y <= size):
            continue
        for i, fac in enumerate(state.config.facilities):
            if fac.contains(spot.x, spot.y):
                counts[i] += 1
                break
    return counts


def step(state: WorldState, commands: Sequence[Command] = ()) -> StepResult:
    if state.terminated:
        raise RuntimeError("episode already finished; call reset() for a new one")

    tick = state.tick + 1
    start_clock = (tick - 1) * TICK_SECONDS
    end_clock = tick * TICK_SECONDS
    params = state.config.fire
    events = TickEvents(tick=tick)

    # 1. Operator commands, in arrival order.
    for cmd in commands:
        applied = _apply_command(state, cmd, tick)
        if applied is not None:
            events.commands.append(applied)

    # 2. Ignite regions whose delay has elapsed.
    for idx, region in enumerate(state.config.regions):
        if state.region_ignited[idx] or region.ignition_delay > start_clock + 1e-9:
            continue
        spots = ignite_region(region, idx, start_clock, state.rng, params,
                              state.next_spot_id)
        state.region_ignited[idx] = True
        state.next_spot_id += len(spots)
        for s in spots:
            state.spots[s.spot_id] = s
            events.new_fronts.append(FrontEvent(
                idx, s.spot_id, s.x, s.y, s.ref_intensity, s.ignited_at))

    # 3. Advance live spots, then merge coincident ones.
    live = sorted(state.live_spots(), key=lambda s: s.spot_id)
    for spot in live:
        step_spot(spot, TICK_SECONDS, end_clock, state.rng, params)
    for _, absorbed in merge_coincident(state.live_spots(), end_clock, params):
        for spot_id in absorbed:
            del state.spots[spot_id]

    # 4. Advance agents.
    for agent in state.team:
        step_agent(agent, state.base_xy, TICK_SECONDS)

    # 5. Sense: undiscovered spots roll per covering agent; known spots in
    # any sensing footprint get their displayed position refreshed.
    sensors = [a for a in state.team if a.kind.senses]
    for agent in sensors:
        for spot in sorted(state.live_spots(), key=lambda s: s.spot_id):
            if spot.state is not SpotState.ACTIVE or not in_fov(agent, spot.x, spot.y):
                continue
            if sense_roll(agent, state.rng):
                intensity = spot.intensity(end_clock, params)
                spot.state = SpotState.SENSED
                spot.ever_sensed = True
                spot.last_seen = LastSeen(spot.x, spot.y, intensity,
                                          spot.vx, spot.vy, tick)
                state.score.sensed_by_agent[agent.global_index] = \
                    state.score.sensed_by_agent.get(agent.global_index, 0) + 1
                events.sensed.append(SenseEvent(
                    agent.global_index, spot.spot_id, spot.x, spot.y,
                    intensity, spot.vx, spot.vy))
    for spot in state.live_spots():
        if spot.state is SpotState.SENSED and any(in_fov(a, spot.x, spot.y) for a in sensors):
            spot.last_seen = LastSeen(spot.x, spot.y,
                                      spot.intensity(end_clock, params),
                                      spot.vx, spot.vy, tick)

    # 6. Prune: one retardant drop per acting agent per tick when sensed fire
    # sits under its footprint; an empty tank sends the agent home instead.
    for agent in state.team:
        if not agent.kind.acts:
            continue
        w = fov_halfwidth(agent.z)
        sensed_in = [s for s in sorted(state.live_spots(), key=lambda s: s.spot_id)
                     if s.state is SpotState.SENSED
                     and abs(s.x - agent.x) <= w and abs(s.y - agent.y) <= w]
        if not sensed_in:
            continue
        if agent.tank < 1:
            log.info("tick %d: agent %d out of retardant, heading home",
                     tick, agent.global_index)
            if not agent.retreating:
                start_retreat(agent, state.base_xy)
            continue
        agent.tank -= 1
        for spot in sensed_in:
            before = spot.intensity(end_clock, params)
            if prune_hit(agent, spot, end_clock, state.rng, params):
                state.score.pruned_by_agent[agent.global_index] = \
                    state.score.pruned_by_agent.get(agent.global_index, 0) + 1
                events.pruned.append(PruneEvent(
                    agent.global_index, spot.spot_id, spot.x, spot.y, before))

    # 7. Scoring at 1 Hz.
    if tick % RECORD_EVERY_TICKS == 0:
        counts = state.counts()
        fac_counts = _facility_live_counts(state)
        events.record_step = True
        events.facility_counts = fac_counts
        events.negative_increment = accumulate_negative(
            state.score, counts.score_active, state.config.facilities, fac_counts)

    reward = (state.config.rewards.sense * len(events.sensed)
              + state.config.rewards.prune * len(events.pruned)
              - events.negative_increment)
    state.reward_total += reward
    state.tick = tick

    # 8. Termination.
    if end_clock >= state.config.world.duration - 1e-9:
        state.terminated = True
    elif (state.config.early_stop and all(state.region_ignited)
          and not any(s.state.live for s in state.spots.values())):
        state.terminated = True

    return StepResult(reward=reward, done=state.terminated, events=events)


# --- views -----------------------------------------------------------------

def agent_state_vector(agent: AgentRuntime, tick: int) -> tuple[float, ...]:
    """The 16-number telemetry row recorded per agent per tick."""
    traj = agent.trajectory
    patrolling = traj.mode is TrajectoryMode.PATROL and bool(traj.goals)
    return (
        agent.x, agent.y, agent.z,
        agent.vx, agent.vy, agent.vz,
        float(tick),
        float(traj.index if traj.mode is TrajectoryMode.NORMAL else 0),
        float(agent.kind.value),
        float(agent.kind_index),
        agent.cum_distance,
        agent.cum_wait,
        float(agent.tank),
        1.0 if agent.retreating else 0.0,
        1.0 if patrolling else 0.0,
        float(traj.index if patrolling else 0),
    )


@dataclass(frozen=True)
class SensedSpotView:
    spot_id: int
    x: float
    y: float
    intensity: float
    vx: float
    vy: float
    seen_tick: int


@dataclass(frozen=True)
class RegionView:
    cell: tuple[int, int]
    firefronts: int
    delay: float
    ignited: bool


@dataclass(frozen=True)
class Observation:
    """Operator-visible picture: telemetry, known fire, static scenario."""

    tick: int
    clock: float
    remaining: float
    selected: int
    agents: tuple[AgentRuntime, ...]
    sensed: tuple[SensedSpotView, ...]
    regions: tuple[RegionView, ...]
    facilities: tuple[Facility, ...]
    facility_on_fire: tuple[int, ...]
    counts: Counts
    total_negative: float


def observe(state: WorldState) -> Observation:
    sensed = tuple(
        SensedSpotView(s.spot_id, s.last_seen.x, s.last_seen.y, s.last_seen.intensity,
                       s.last_seen.vx, s.last_seen.vy, s.last_seen.tick)
        for s in sorted(state.spots.values(), key=lambda s: s.spot_id)
        if s.state is SpotState.SENSED and s.last_seen is not None)
    regions = tuple(RegionView(r.cell, r.num_firefronts, r.ignition_delay,
                               state.region_ignited[i])
                    for i, r in enumerate(state.config.regions))
    return Observation(
        tick=state.tick,
        clock=state.clock,
        remaining=max(state.config.world.duration - state.clock, 0.0),
        selected=state.selected,
        agents=tuple(state.team),
        sensed=sensed,
        regions=regions,
        facilities=tuple(state.config.facilities),
        facility_on_fire=tuple(_facility_live_counts(state)),
        counts=state.counts(),
        total_negative=state.score.total_negative,
    )


def current_scores(state: WorldState) -> dict:
    counts = state.counts()
    overall, perception, action = ratio_scores(counts.spawned, counts.ever_sensed,
                                               counts.pruned)
    facility = facility_score(state.score.ever_on_fire)
    nrr = negative_reward_ratio(state.score.total_negative, state.score.expected_negative)
    final, verbal = final_evaluation(perception, action, facility, nrr)
    return {
        "total_negative": state.score.total_negative,
        "expected_negative": state.score.expected_negative,
        "nrr": nrr,
        "overall": overall,
        "perception": perception,
        "action": action,
        "facility": facility,
        "final": final,
        "verbal": verbal,
    }


def snapshot(state: WorldState, include_hidden: bool = False) -> dict:
    """JSON-ready scene description; also the exported frame schema."""
    params = state.config.fire
    now = state.clock
    counts = state.counts()
    agents = []
    for a in state.team:
        agents.append({
            "index": a.global_index,
            "kind": a.kind.name.lower(),
            "kind_index": a.kind_index,
            "x": a.x, "y": a.y, "z": a.z,
            "vx": a.vx, "vy": a.vy, "vz": a.vz,
            "battery": a.battery,
            "battery_at_chain_end": estimated_battery_at_chain_end(a, TICK_SECONDS),
            "tank": a.tank,
            "distance": a.cum_distance,
            "waiting": a.cum_wait,
            "deployed": a.deployed,
            "retreating": a.retreating,
            "patrolling": a.trajectory.mode is TrajectoryMode.PATROL and bool(a.trajectory.goals),
            "goal_index": a.trajectory.index,
            "goals": [list(g) for g in a.trajectory.goals],
            "fov_halfwidth": fov_halfwidth(a.z),
        })
    sensed = [{
        "spot_id": s.spot_id,
        "x": s.last_seen.x, "y": s.last_seen.y,
        "intensity": s.last_seen.intensity,
        "vx": s.last_seen.vx, "vy": s.last_seen.vy,
        "seen_tick": s.last_seen.tick,
    } for s in sorted(state.spots.values(), key=lambda s: s.spot_id)
        if s.state is SpotState.SENSED and s.last_seen is not None]
    facilities = [{
        "kind": f.kind.value,
        "cell": cell_name(*f.anchor),
        "anchor": list(f.anchor),
        "footprint": list(f.footprint),
        "orientation": f.orientation,
        "on_fire": n,
        "ever_on_fire": state.score.ever_on_fire[i],
    } for i, (f, n) in enumerate(zip(state.config.facilities,
                                     _facility_live_counts(state)))]
    regions = [{
        "cell": cell_name(*r.cell),
        "firefronts": r.num_firefronts,
        "delay": r.ignition_delay,
        "ignited": state.region_ignited[i],
    } for i, r in enumerate(state.config.regions)]
    snap = {
        "tick": state.tick,
        "clock": now,
        "remaining": max(state.config.world.duration - now, 0.0),
        "terminated": state.terminated,
        "selected": state.selected,
        "world": {"size": state.config.world.size_units,
                  "duration": state.config.world.duration,
                  "cell": CELL_UNITS},
        "agents": agents,
        "sensed": sensed,
        "facilities": facilities,
        "regions": regions,
        "counts": {
            "spawned": counts.spawned,
            "active": counts.active,
            "sensed": counts.sensed_now,
            "ever_sensed": counts.ever_sensed,
            "pruned": counts.pruned,
            "burnt": counts.burnt,
        },
        "scores": current_scores(state),
    }
    if include_hidden:
        snap["spots"] = [{
            "spot_id": s.spot_id,
            "state": s.state.value,
            "x": s.x, "y": s.y,
            "vx": s.vx, "vy": s.vy,
            "intensity": s.intensity(now, params),
        } for s in sorted(state.spots.values(), key=lambda s: s.spot_id)
            if s.state.live]
    return snap


# --- episode driver --------------------------------------------------------

@dataclass
class EpisodeSummary:
    scenario: str
    seed: int
    ticks: int
    clock: float
    terminated_early: bool
    counts: Counts
    total_negative: float
    expected_negative: float
    nrr: float
    overall: float
    perception: float
    action: float
    facility: float
    final: float
    verbal: str
    reward_total: float
    sensed_by_agent: dict[int, int]
    pruned_by_agent: dict[int, int]

    def to_mapping(self) -> dict:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "ticks": self.ticks,
            "clock": self.clock,
            "terminated_early": self.terminated_early,
            "spawned": self.counts.spawned,
            "active": self.counts.active,
            "sensed": self.counts.sensed_now,
            "ever_sensed": self.counts.ever_sensed,
            "pruned": self.counts.pruned,
            "burnt": self.counts.burnt,
            "total_negative": self.total_negative,
            "expected_negative": self.expected_negative,
            "nrr": self.nrr,
            "overall": self.overall,
            "perception": self.perception,
            "action": self.action,
            "facility": self.facility,
            "final": self.final,
            "verbal": self.verbal,
            "reward_total": self.reward_total,
            "sensed_by_agent": {str(k): v for k, v in sorted(self.sensed_by_agent.items())},
            "pruned_by_agent": {str(k): v for k, v in sorted(self.pruned_by_agent.items())},
        }


def summarize(state: WorldState) -> EpisodeSummary:
    counts = state.counts()
    scores = current_scores(state)
    return EpisodeSummary(
        scenario=state.config.name,
        seed=state.seed,
        ticks=state.tick,
        clock=state.clock,
        terminated_early=state.tick < state.duration_ticks,
        counts=counts,
        total_negative=scores["total_negative"],
        expected_negative=scores["expected_negative"],
        nrr=scores["nrr"],
        overall=scores["overall"],
        perception=scores["perception"],
        action=scores["action"],
        facility=scores["facility"],
        final=scores["final"],
        verbal=scores["verbal"],
        reward_total=state.reward_total,
        sensed_by_agent=dict(state.score.sensed_by_agent),
        pruned_by_agent=dict(state.score.pruned_by_agent),
    )


class Recorder(Protocol):
    def on_reset(self, state: WorldState) -> None: ...
    def on_tick(self, state: WorldState, events: TickEvents) -> None: ...
    def on_end(self, state: WorldState, summary: EpisodeSummary) -> None: ...
    def on_abort(self, state: WorldState) -> None: ...


Policy = Callable[[Observation], Sequence[Command]]


def run_headless(config: ScenarioConfig, policy: Policy | None = None,
                 seed: int | None = None, recorder: Recorder | None = None,
                 max_ticks: int | None = None) -> EpisodeSummary:
    """Drive a full episode; the policy sees each post-tick observation."""
    state = reset(config, seed=seed)
    if recorder is not None:
        recorder.on_reset(state)
    try:
        while not state.terminated:
            if max_ticks is not None and state.tick >= max_ticks:
                break
            commands = policy(observe(state)) if policy is not None else ()
            result = step(state, commands)
            if recorder is not None:
                recorder.on_tick(state, result.events)
    except Exception:
        if recorder is not None:
            recorder.on_abort(state)
        raise
    summary = summarize(state)
    if recorder is not None:
        recorder.on_end(state, summary)
    return summary
