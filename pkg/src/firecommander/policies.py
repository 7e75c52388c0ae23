"""Built-in operator policies for headless runs.

A policy is any callable taking the per-tick observation and returning the
commands to apply next tick. Three are provided: idle (do nothing), sweep
(a deterministic scripted baseline that patrols the fire lanes and chases
known spots), and scripted playback of a tick-stamped command file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import yaml

from .agents import TrajectoryMode
from .fire import wind_direction
from .sim import TICK_SECONDS, Altitude, Command, Observation, SetGoal, SelectAgent
from .world import CELL_UNITS


def idle_policy(obs: Observation) -> list[Command]:
    return []


class SweepPolicy:
    """Patrol the downwind lane of each region; chase what gets sensed.

    Sensing craft climb to mid-band for a wider footprint, then loop a ladder
    of waypoints projected downwind from their assigned regions. Acting craft
    re-target the hottest known spot once a second. Everything is derived
    from the observation, so runs replay bit-exactly.
    """

    CLIMB_STEPS = 4  # 10 m each, from the band floor
    LADDER_POINTS = 6
    LADDER_SPACING = 150.0

    def __init__(self) -> None:
        self._last_goal: dict[int, tuple[float, float]] = {}

    def __call__(self, obs: Observation) -> list[Command]:
        commands: list[Command] = []
        if obs.tick == 0:
            commands += self._launch(obs)
        if obs.tick % 10 == 0:
            commands += self._chase(obs)
        return commands

    def _launch(self, obs: Observation) -> list[Command]:
        commands: list[Command] = []
        sensors = [a for a in obs.agents if a.kind.senses]
        for a in sensors:
            for _ in range(self.CLIMB_STEPS):
                commands.append(Altitude(direction=1, agent=a.global_index))
        for rank, agent in enumerate(sensors):
            lanes = [r for i, r in enumerate(obs.regions)
                     if i % len(sensors) == rank]
            if not lanes:
                lanes = [obs.regions[rank % len(obs.regions)]]
            for region in lanes:
                cx, cy = self._region_center(region)
                commands.append(SetGoal(cx, cy, patrol=True, agent=agent.global_index))
                # Waypoints follow where wind-driven fire will drift.
                dx, dy = self._lane_direction(obs, region)
                for k in range(1, self.LADDER_POINTS + 1):
                    commands.append(SetGoal(cx + dx * self.LADDER_SPACING * k,
                                            cy + dy * self.LADDER_SPACING * k,
                                            patrol=True, agent=agent.global_index))
        # Pure suppression craft hold station over a region until fire is
        # known; arriving with the sensors beats chasing from the base later.
        pure_actors = [a for a in obs.agents if a.kind.acts and not a.kind.senses]
        for rank, agent in enumerate(pure_actors):
            region = obs.regions[rank % len(obs.regions)]
            cx, cy = self._region_center(region)
            commands.append(SetGoal(cx, cy, patrol=True, agent=agent.global_index))
        return commands

    @staticmethod
    def _region_center(region) -> tuple[float, float]:
        return (region.cell[0] * CELL_UNITS + CELL_UNITS / 2.0,
                region.cell[1] * CELL_UNITS + CELL_UNITS / 2.0)

    @staticmethod
    def _lane_direction(obs: Observation, region) -> tuple[float, float]:
        # The observation exposes region geometry but not wind; recover the
        # drift direction from any sensed spot of that lane, else head 45.
        best = None
        for s in obs.sensed:
            speed = math.hypot(s.vx, s.vy)
            if speed > 1e-6 and (best is None or s.intensity > best.intensity):
                best = s
        if best is not None:
            speed = math.hypot(best.vx, best.vy)
            return best.vx / speed, best.vy / speed
        return wind_direction(45.0)

    def _chase(self, obs: Observation) -> list[Command]:
        commands: list[Command] = []
        actors = [a for a in obs.agents
                  if a.kind.acts and not a.retreating and self._retargetable(a)]
        if not actors or not obs.sensed:
            return commands
        claimed: set[int] = set()
        for agent in actors:
            best = None
            best_d = math.inf
            for s in obs.sensed:
                if s.spot_id in claimed:
                    continue
                x, y = self._estimate(obs, s, 0.0)
                d = math.hypot(x - agent.x, y - agent.y)
                if d < best_d:
                    best, best_d = s, d
            if best is None:  # fewer live spots than idle craft
                best = min(obs.sensed, key=lambda s: s.spot_id)
                best_d = math.hypot(best.x - agent.x, best.y - agent.y)
            claimed.add(best.spot_id)
            # Aim where the spot will be on arrival, not where it was seen.
            lead = best_d / max(agent.spec.max_velocity, 1e-6)
            goal = self._estimate(obs, best, lead + 1.0)
            last = self._last_goal.get(agent.global_index)
            if last is not None and math.hypot(goal[0] - last[0], goal[1] - last[1]) <= 2.0:
                continue
            self._last_goal[agent.global_index] = goal
            commands.append(SetGoal(goal[0], goal[1], agent=agent.global_index))
        return commands

    @staticmethod
    def _retargetable(agent) -> bool:
        # Free to take a new target: parked, holding station, or chain done.
        # Hybrids run their sensing ladder and are never pulled off it.
        if agent.kind.senses:
            return False
        traj = agent.trajectory
        return (not agent.deployed
                or traj.mode is TrajectoryMode.PATROL
                or traj.index >= len(traj.goals))

    @staticmethod
    def _estimate(obs: Observation, spot, extra_seconds: float) -> tuple[float, float]:
        stale = (obs.tick - spot.seen_tick) * TICK_SECONDS + extra_seconds
        return spot.x + spot.vx * stale, spot.y + spot.vy * stale


@dataclass(frozen=True)
class ScriptEntry:
    tick: int  # application tick
    command: Command


class ScriptedPolicy:
    """Replay a fixed command schedule keyed by application tick."""

    def __init__(self, entries: list[ScriptEntry]) -> None:
        self._by_tick: dict[int, list[Command]] = {}
        for e in entries:
            self._by_tick.setdefault(e.tick, []).append(e.command)

    def __call__(self, obs: Observation) -> list[Command]:
        # Commands issued now land on the next tick.
        return self._by_tick.get(obs.tick + 1, [])


def parse_script(text: str) -> list[ScriptEntry]:
    """Command schedule file: a YAML list of tick-stamped commands.

    Entry shapes:
      - {tick: 5, select: 2}
      - {tick: 10, goal: [400.0, 300.0], patrol: false, agent: 1}
      - {tick: 20, altitude: up, agent: 1}
    Ticks must be nondecreasing; agent may be omitted where selection applies.
    """
    try:
        data = yaml.safe_load(text) or []
    except yaml.YAMLError as exc:
        raise ValueError(f"script: not valid YAML ({exc})") from exc
    if not isinstance(data, list):
        raise ValueError("script: top level must be a list")
    entries: list[ScriptEntry] = []
    last_tick = 0
    for i, row in enumerate(data):
        if not isinstance(row, dict) or "tick" not in row:
            raise ValueError(f"script: entry {i} must be a mapping with a tick")
        tick = int(row["tick"])
        if tick < 1 or tick < last_tick:
            raise ValueError(f"script: entry {i} tick {tick} out of order")
        last_tick = tick
        agent = row.get("agent")
        agent = int(agent) if agent is not None else None
        if "select" in row:
            cmd: Command = SelectAgent(agent=int(row["select"]))
        elif "goal" in row:
            gx, gy = row["goal"]
            cmd = SetGoal(x=float(gx), y=float(gy),
                          patrol=bool(row.get("patrol", False)), agent=agent)
        elif "altitude" in row:
            word = str(row["altitude"]).lower()
            if word not in ("up", "down"):
                raise ValueError(f"script: entry {i} altitude must be 'up' or 'down'")
            cmd = Altitude(direction=1 if word == "up" else -1, agent=agent)
        else:
            raise ValueError(f"script: entry {i} needs one of select/goal/altitude")
        entries.append(ScriptEntry(tick=tick, command=cmd))
    return entries


def load_script(path: str) -> ScriptedPolicy:
    with open(path, "r", encoding="utf-8") as fh:
        return ScriptedPolicy(parse_script(fh.read()))


def dump_script(entries: list[ScriptEntry]) -> str:
    rows = []
    for e in entries:
        cmd = e.command
        if isinstance(cmd, SelectAgent):
            rows.append({"tick": e.tick, "select": cmd.agent})
        elif isinstance(cmd, SetGoal):
            row = {"tick": e.tick, "goal": [cmd.x, cmd.y], "patrol": cmd.patrol}
            if cmd.agent is not None:
                row["agent"] = cmd.agent
            rows.append(row)
        else:
            row = {"tick": e.tick, "altitude": "up" if cmd.direction > 0 else "down"}
            if cmd.agent is not None:
                row["agent"] = cmd.agent
            rows.append(row)
    return yaml.safe_dump(rows, sort_keys=False, default_flow_style=None)


def get_policy(name: str):
    """Resolve a policy argument: builtin name or a script file path."""
    if name == "idle":
        return idle_policy
    if name == "sweep":
        return SweepPolicy()
    return load_script(name)
