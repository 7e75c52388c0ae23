"""UAV team kinematics, perception and retardant delivery.

Three crew kinds: perception craft sense fire but carry no retardant, action
craft carry retardant but cannot sense, hybrids do both (less confidently).
Agents fly straight segments between commanded goals at capped speed, drain
battery per unit flown plus a fixed amount per tick, and are forced home with
a reserve margin before the battery would strand them. Landing at the base
refuels and recharges instantly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .fire import FireModelParams, Firespot, SpotState

BATTERY_PER_UNIT = 0.1  # drain per distance unit flown
BATTERY_PER_TICK = 0.05  # drain per tick while deployed
ALTITUDE_STEP = 10.0  # metres per vertical command
FOV_HALF_ANGLE_DEG = 30.0  # square footprint half-angle
ACTION_DWELL_SECONDS = 3.0  # idle time before an action craft heads home
RETREAT_RESERVE = 1.1  # battery margin over the straight-line trip home


class AgentKind(Enum):
    PERCEPTION = 0
    ACTION = 1
    HYBRID = 2

    @property
    def senses(self) -> bool:
        return self in (AgentKind.PERCEPTION, AgentKind.HYBRID)

    @property
    def acts(self) -> bool:
        return self in (AgentKind.ACTION, AgentKind.HYBRID)


@dataclass(frozen=True)
class AgentSpec:
    kind: AgentKind
    z_min: float = 10.0
    z_max: float = 100.0
    battery_capacity: float = 500.0
    max_velocity: float = 20.0
    tank_capacity: int = 10
    confidence: float = 0.9  # per-spot success chance of a retardant drop


class TrajectoryMode(Enum):
    NORMAL = 0
    PATROL = 1


@dataclass
class Trajectory:
    goals: list[tuple[float, float]] = field(default_factory=list)
    mode: TrajectoryMode = TrajectoryMode.NORMAL
    index: int = 0

    @property
    def current(self) -> tuple[float, float] | None:
        if self.index < len(self.goals):
            return self.goals[self.index]
        return None

    def advance(self) -> None:
        self.index += 1
        if self.mode is TrajectoryMode.PATROL and self.goals:
            self.index %= len(self.goals)


@dataclass
class AgentRuntime:
    spec: AgentSpec
    global_index: int  # 1-based position in the team roster
    kind_index: int  # 1-based within the agent's kind
    x: float
    y: float
    z: float
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    battery: float = 0.0
    tank: int = 0
    cum_distance: float = 0.0
    cum_wait: float = 0.0
    deployed: bool = False
    retreating: bool = False
    dwell_remaining: float | None = None
    trajectory: Trajectory = field(default_factory=Trajectory)

    @property
    def kind(self) -> AgentKind:
        return self.spec.kind


def fov_halfwidth(z: float) -> float:
    """Half-width of the square ground footprint at altitude z."""
    return z * math.tan(math.radians(FOV_HALF_ANGLE_DEG))


def in_fov(agent: AgentRuntime, x: float, y: float) -> bool:
    w = fov_halfwidth(agent.z)
    return abs(x - agent.x) <= w and abs(y - agent.y) <= w


def sense_probability(z: float, z_min: float, z_max: float) -> float:
    """Detection chance per spot per tick: certain at z_min, 40% at z_max."""
    if z_max <= z_min:
        return 1.0
    return 1.0 - 0.6 * (z - z_min) / (z_max - z_min)


def trip_cost(distance: float, max_velocity: float, dt: float) -> float:
    """Battery needed to fly `distance` straight home."""
    if distance <= 0.0:
        return 0.0
    ticks = math.ceil(distance / (max_velocity * dt))
    return BATTERY_PER_UNIT * distance + BATTERY_PER_TICK * ticks


def change_altitude(agent: AgentRuntime, direction: int) -> float:
    """Step altitude up or down, clamped to the craft's band. Returns new z."""
    if agent.kind is AgentKind.ACTION:
        raise ValueError("action craft fly at a fixed altitude")
    z = agent.z + ALTITUDE_STEP * (1 if direction > 0 else -1)
    agent.z = min(max(z, agent.spec.z_min), agent.spec.z_max)
    return agent.z


def start_retreat(agent: AgentRuntime, base_xy: tuple[float, float]) -> None:
    agent.retreating = True
    agent.dwell_remaining = None
    agent.trajectory = Trajectory(goals=[base_xy], mode=TrajectoryMode.NORMAL)


def step_agent(agent: AgentRuntime, base_xy: tuple[float, float], dt: float) -> None:
    """Advance one agent by dt: move, drain, land, dwell, reserve check."""
    if not agent.deployed:
        agent.vx = agent.vy = agent.vz = 0.0
        return

    target = agent.trajectory.current
    moved = 0.0
    if target is not None:
        ox, oy = agent.x, agent.y
        dx, dy = target[0] - agent.x, target[1] - agent.y
        dist = math.hypot(dx, dy)
        reach = agent.spec.max_velocity * dt
        if dist <= reach:
            agent.x, agent.y = target
            moved = dist
            agent.trajectory.advance()
        elif dist > 0.0:
            agent.x += dx / dist * reach
            agent.y += dy / dist * reach
            moved = reach
        agent.vx = (agent.x - ox) / dt
        agent.vy = (agent.y - oy) / dt
    else:
        agent.vx = agent.vy = 0.0
    agent.vz = 0.0

    agent.cum_distance += moved
    if moved == 0.0:
        agent.cum_wait += dt
    agent.battery -= BATTERY_PER_UNIT * moved + BATTERY_PER_TICK

    if agent.retreating and agent.trajectory.current is None:
        # Home: instant turnaround.
        agent.retreating = False
        agent.deployed = False
        agent.battery = agent.spec.battery_capacity
        agent.tank = agent.spec.tank_capacity
        agent.trajectory = Trajectory()
        agent.dwell_remaining = None
        return

    if (agent.kind is AgentKind.ACTION and not agent.retreating
            and agent.trajectory.current is None):
        if agent.dwell_remaining is None:
            agent.dwell_remaining = ACTION_DWELL_SECONDS
        else:
            agent.dwell_remaining -= dt
            if agent.dwell_remaining <= 0.0:
                start_retreat(agent, base_xy)
                return

    if not agent.retreating:
        home = trip_cost(math.hypot(agent.x - base_xy[0], agent.y - base_xy[1]),
                         agent.spec.max_velocity, dt)
        if home > 0.0 and agent.battery <= RETREAT_RESERVE * home:
            start_retreat(agent, base_xy)


def estimated_battery_at_chain_end(agent: AgentRuntime, dt: float) -> float:
    """Battery forecast after flying the remaining goal chain (one patrol lap)."""
    remaining = agent.trajectory.goals[agent.trajectory.index:]
    x, y = agent.x, agent.y
    cost = 0.0
    for gx, gy in remaining:
        cost += trip_cost(math.hypot(gx - x, gy - y), agent.spec.max_velocity, dt)
        x, y = gx, gy
    return agent.battery - cost


def sense_roll(agent: AgentRuntime, rng: np.random.Generator) -> bool:
    p = sense_probability(agent.z, agent.spec.z_min, agent.spec.z_max)
    return rng.random() < p


def prune_hit(agent: AgentRuntime, spot: Firespot, now: float,
              rng: np.random.Generator, params: FireModelParams) -> bool:
    """Roll one retardant drop against one sensed spot; True if pruned out.

    A hit rebases the spot's intensity reference so later decay starts from
    the knocked-down value.
    """
    if rng.random() >= agent.spec.confidence:
        return False
    knocked = spot.intensity(now, params) * (1.0 - params.extinguish_coefficient)
    spot.ref_intensity = knocked
    spot.ref_time = now
    if knocked < params.intensity_floor:
        spot.state = SpotState.PRUNED
        return True
    return False
