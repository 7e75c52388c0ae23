"""Scenario configuration: schema, file format, validation, preset catalog.

A scenario file is one YAML document (key/value with nested lists, UTF-8,
mandatory schema_version). Cells are written chess-style ("A-01"). Loading is
structural only; semantic rules live in validate() so a tool can show every
violation at once rather than dying on the first.

The catalog ships a practice mission plus 24 graded scenarios. Their facility
counts, team sizes and per-region fire parameters are fixed; the placements
are canonical hand-authored layouts on the 1200-unit map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import yaml

from .agents import AgentKind, AgentSpec
from .fire import FireModelParams
from .scoring import ScoringParams
from .world import (DURATIONS, WORLD_SIZES, CELL_UNITS, Facility, FacilityKind,
                    FireRegion, GridWorld, ValidationReport, cell_name,
                    parse_cell_name, validate_layout)

SCHEMA_VERSION = 1

RANGES = {
    "world_sizes": list(WORLD_SIZES),
    "durations": list(DURATIONS),
    "fire_regions": (1, 5),
    "facility_max": 5,
    "firefronts": (1, 30),
    "ignition_delay": (0, 180),
    "fuel": (2, 15),
    "wind_speed": (2, 10),
    "wind_azimuth": (0, 360),  # half-open: 360 itself is out
    "temporal_penalty": (0.0, 2.0),
    "propagation_weight": (0.0, 1.0),
    "confidence": (0.1, 1.0),
    "altitude": (10, 100),
    "battery": (200, 800),
    "velocity": (10, 30),
    "tank": (1, 15),
    "max_agents": 9,
}

DEFAULTS = {
    "world_size": 1200,
    "duration": 180,
    "firefronts": 10,
    "ignition_delay": 0,
    "fuel": 10,
    "wind_speed": 5,
    "wind_azimuth": 45,
    "temporal_penalty": 1.25,
    "propagation_weight": 0.1,
    "action_confidence": 0.9,
    "hybrid_confidence": 0.8,
    "battery": 500,
    "velocity": 20,
    "tank": 10,
    "action_altitude": 50.0,
}

_KIND_NAMES = {k.name.lower(): k for k in AgentKind}


def default_agent_spec(kind: AgentKind) -> AgentSpec:
    if kind is AgentKind.PERCEPTION:
        return AgentSpec(kind, z_min=10.0, z_max=100.0, battery_capacity=500.0,
                         max_velocity=20.0, tank_capacity=0, confidence=0.0)
    if kind is AgentKind.ACTION:
        z = DEFAULTS["action_altitude"]
        return AgentSpec(kind, z_min=z, z_max=z, battery_capacity=500.0,
                         max_velocity=20.0, tank_capacity=10, confidence=0.9)
    return AgentSpec(kind, z_min=10.0, z_max=100.0, battery_capacity=500.0,
                     max_velocity=20.0, tank_capacity=10, confidence=0.8)


@dataclass(frozen=True)
class RewardParams:
    sense: float = 1.0
    prune: float = 2.0


@dataclass
class ScenarioConfig:
    name: str
    world: GridWorld
    facilities: list[Facility]
    regions: list[FireRegion]
    agents: list[AgentSpec]
    fire: FireModelParams = field(default_factory=FireModelParams)
    scoring: ScoringParams = field(default_factory=ScoringParams)
    rewards: RewardParams = field(default_factory=RewardParams)
    homogeneous: dict[str, bool] = field(
        default_factory=lambda: {"perception": True, "action": True, "hybrid": True})
    seed: int = 0
    practice: bool = False
    early_stop: bool = True

    @property
    def total_firefronts(self) -> int:
        return sum(r.num_firefronts for r in self.regions)

    def base(self) -> Facility:
        return next(f for f in self.facilities if f.kind is FacilityKind.BASE)


# --- serialization ---------------------------------------------------------

def to_mapping(config: ScenarioConfig) -> dict:
    facilities = []
    for fac in config.facilities:
        entry = {"kind": fac.kind.value, "cell": cell_name(*fac.anchor)}
        if fac.kind is FacilityKind.BASE:
            entry["orientation"] = fac.orientation or "vertical"
        facilities.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "name": config.name,
        "world": {"size": int(config.world.size_units),
                  "duration": config.world.duration},
        "facilities": facilities,
        "regions": [{
            "cell": cell_name(*r.cell),
            "firefronts": r.num_firefronts,
            "delay": r.ignition_delay,
            "fuel": r.fuel,
            "wind_speed": r.wind_speed,
            "wind_azimuth": r.wind_azimuth,
        } for r in config.regions],
        "agents": [{
            "kind": a.kind.name.lower(),
            "z_min": a.z_min,
            "z_max": a.z_max,
            "battery": a.battery_capacity,
            "velocity": a.max_velocity,
            "tank": a.tank_capacity,
            "confidence": a.confidence,
        } for a in config.agents],
        "fire_model": {
            "decay_rate": config.fire.decay_rate,
            "intensity_floor": config.fire.intensity_floor,
            "radiation_radius": config.fire.radiation_radius,
            "velocity_noise_sigma": config.fire.velocity_noise_sigma,
            "extinguish_coefficient": config.fire.extinguish_coefficient,
        },
        "scoring": {
            "propagation_weight": config.scoring.propagation_weight,
            "temporal_penalty": config.scoring.temporal_penalty,
            "penalty_overrides": {k.value: v for k, v
                                  in sorted(config.scoring.penalty_overrides.items(),
                                            key=lambda kv: kv[0].value)},
        },
        "rewards": {"sense": config.rewards.sense, "prune": config.rewards.prune},
        "homogeneous": dict(config.homogeneous),
        "seed": config.seed,
        "practice": config.practice,
        "early_stop": config.early_stop,
    }


def _structural(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(f"scenario file: {message}")


def from_mapping(data: dict) -> ScenarioConfig:
    _structural(isinstance(data, dict), "top level must be a mapping")
    _structural(data.get("schema_version") == SCHEMA_VERSION,
                f"schema_version must be {SCHEMA_VERSION}, got {data.get('schema_version')!r}")
    wd = data.get("world")
    _structural(isinstance(wd, dict) and "size" in wd and "duration" in wd,
                "world must be a mapping with size and duration")
    size, duration = wd["size"], wd["duration"]
    _structural(isinstance(size, int) and size > 0 and size % int(CELL_UNITS) == 0,
                f"world size must be a positive multiple of {int(CELL_UNITS)}, got {size!r}")
    _structural(isinstance(duration, int) and duration > 0,
                f"duration must be a positive integer, got {duration!r}")
    world = GridWorld(size_cells=size // int(CELL_UNITS), duration=duration)

    facilities = []
    for i, entry in enumerate(data.get("facilities", [])):
        _structural(isinstance(entry, dict) and "kind" in entry and "cell" in entry,
                    f"facility {i} must be a mapping with kind and cell")
        try:
            kind = FacilityKind(entry["kind"])
        except ValueError:
            raise ValueError(f"scenario file: facility {i} has unknown kind {entry['kind']!r}")
        anchor = parse_cell_name(entry["cell"], world)
        orientation = entry.get("orientation") if kind is FacilityKind.BASE else None
        if kind is FacilityKind.BASE and orientation is None:
            orientation = "vertical"
        facilities.append(Facility(kind=kind, anchor=anchor, orientation=orientation))

    regions = []
    for j, entry in enumerate(data.get("regions", [])):
        _structural(isinstance(entry, dict) and "cell" in entry,
                    f"region {j} must be a mapping with a cell")
        regions.append(FireRegion(
            cell=parse_cell_name(entry["cell"], world),
            num_firefronts=int(entry.get("firefronts", DEFAULTS["firefronts"])),
            ignition_delay=float(entry.get("delay", DEFAULTS["ignition_delay"])),
            fuel=float(entry.get("fuel", DEFAULTS["fuel"])),
            wind_speed=float(entry.get("wind_speed", DEFAULTS["wind_speed"])),
            wind_azimuth=float(entry.get("wind_azimuth", DEFAULTS["wind_azimuth"])),
        ))

    agents = []
    for i, entry in enumerate(data.get("agents", [])):
        _structural(isinstance(entry, dict) and entry.get("kind") in _KIND_NAMES,
                    f"agent {i} must name a kind in {sorted(_KIND_NAMES)}")
        base = default_agent_spec(_KIND_NAMES[entry["kind"]])
        agents.append(replace(
            base,
            z_min=float(entry.get("z_min", base.z_min)),
            z_max=float(entry.get("z_max", base.z_max)),
            battery_capacity=float(entry.get("battery", base.battery_capacity)),
            max_velocity=float(entry.get("velocity", base.max_velocity)),
            tank_capacity=int(entry.get("tank", base.tank_capacity)),
            confidence=float(entry.get("confidence", base.confidence)),
        ))

    fm = data.get("fire_model", {})
    fire = FireModelParams(
        decay_rate=float(fm.get("decay_rate", 0.05)),
        intensity_floor=float(fm.get("intensity_floor", 1.0)),
        radiation_radius=float(fm.get("radiation_radius", 25.0)),
        velocity_noise_sigma=float(fm.get("velocity_noise_sigma", 0.1)),
        extinguish_coefficient=float(fm.get("extinguish_coefficient", 1.0)),
    )

    sc = data.get("scoring", {})
    overrides = {}
    for key, value in (sc.get("penalty_overrides") or {}).items():
        try:
            overrides[FacilityKind(key)] = float(value)
        except ValueError:
            raise ValueError(f"scenario file: penalty override for unknown kind {key!r}")
    scoring = ScoringParams(
        propagation_weight=float(sc.get("propagation_weight", DEFAULTS["propagation_weight"])),
        temporal_penalty=float(sc.get("temporal_penalty", DEFAULTS["temporal_penalty"])),
        penalty_overrides=overrides,
    )

    rw = data.get("rewards", {})
    rewards = RewardParams(sense=float(rw.get("sense", 1.0)),
                           prune=float(rw.get("prune", 2.0)))

    homogeneous = {"perception": True, "action": True, "hybrid": True}
    homogeneous.update({str(k): bool(v) for k, v in (data.get("homogeneous") or {}).items()})

    return ScenarioConfig(
        name=str(data.get("name", "custom")),
        world=world,
        facilities=facilities,
        regions=regions,
        agents=agents,
        fire=fire,
        scoring=scoring,
        rewards=rewards,
        homogeneous=homogeneous,
        seed=int(data.get("seed", 0)),
        practice=bool(data.get("practice", False)),
        early_stop=bool(data.get("early_stop", True)),
    )


def dumps(config: ScenarioConfig) -> str:
    return yaml.safe_dump(to_mapping(config), sort_keys=True, default_flow_style=False)


def loads(text: str) -> ScenarioConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ValueError(f"scenario file: not valid YAML ({exc})") from exc
    return from_mapping(data)


def save(config: ScenarioConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(config))


def load(path: str) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


# --- semantic validation ---------------------------------------------------

def _check_range(report: ValidationReport, code: str, value: float,
                 bounds: tuple[float, float], label: str,
                 open_high: bool = False) -> None:
    low, high = bounds
    bad = value < low or (value >= high if open_high else value > high)
    if bad:
        edge = ")" if open_high else "]"
        report.add(code, f"{label} must lie in [{low}, {high}{edge}, got {value}")


def validate(config: ScenarioConfig) -> ValidationReport:
    """Every rule a scenario must satisfy before it can be simulated."""
    report = validate_layout(config.world, config.facilities, config.regions)

    if config.world.size_units not in WORLD_SIZES:
        report.add("world_size", f"world size must be one of {WORLD_SIZES}")
    if config.world.duration not in DURATIONS:
        report.add("duration", f"duration must be one of {DURATIONS}")

    for j, r in enumerate(config.regions):
        if not (RANGES["firefronts"][0] <= r.num_firefronts <= RANGES["firefronts"][1]
                and r.num_firefronts == int(r.num_firefronts)):
            report.add("firefronts", f"region {j}: firefront count must be an integer in {RANGES['firefronts']}")
        _check_range(report, "ignition_delay", r.ignition_delay, RANGES["ignition_delay"], f"region {j} delay")
        _check_range(report, "fuel", r.fuel, RANGES["fuel"], f"region {j} fuel")
        _check_range(report, "wind_speed", r.wind_speed, RANGES["wind_speed"], f"region {j} wind speed")
        _check_range(report, "wind_azimuth", r.wind_azimuth, RANGES["wind_azimuth"],
                     f"region {j} wind azimuth", open_high=True)

    _check_range(report, "temporal_penalty", config.scoring.temporal_penalty,
                 RANGES["temporal_penalty"], "temporal penalty")
    _check_range(report, "propagation_weight", config.scoring.propagation_weight,
                 RANGES["propagation_weight"], "propagation weight")
    for kind, value in config.scoring.penalty_overrides.items():
        if value < 0:
            report.add("penalty_override", f"penalty override for {kind.value} must be nonnegative")

    if not 1 <= len(config.agents) <= RANGES["max_agents"]:
        report.add("team_size", f"team must have 1 to {RANGES['max_agents']} agents, found {len(config.agents)}")
    if not any(a.kind.senses for a in config.agents):
        report.add("no_perception", "team has no agent able to sense fire")
    if not any(a.kind.acts for a in config.agents):
        report.add("no_action", "team has no agent able to drop retardant")

    for i, a in enumerate(config.agents):
        lo, hi = RANGES["altitude"]
        if not (lo <= a.z_min <= a.z_max <= hi):
            report.add("altitude", f"agent {i}: altitude band must satisfy {lo} <= z_min <= z_max <= {hi}")
        _check_range(report, "battery", a.battery_capacity, RANGES["battery"], f"agent {i} battery")
        _check_range(report, "velocity", a.max_velocity, RANGES["velocity"], f"agent {i} velocity")
        if a.kind.acts:
            _check_range(report, "tank", a.tank_capacity, RANGES["tank"], f"agent {i} tank")
            _check_range(report, "confidence", a.confidence, RANGES["confidence"], f"agent {i} confidence")
        elif a.tank_capacity != 0:
            report.add("tank", f"agent {i}: perception craft carry no tank")

    for kind_name, flag in config.homogeneous.items():
        if not flag:
            continue
        kind = _KIND_NAMES.get(kind_name)
        if kind is None:
            report.add("homogeneous", f"unknown agent kind {kind_name!r} in homogeneous flags")
            continue
        specs = [a for a in config.agents if a.kind is kind]
        if len({(a.z_min, a.z_max, a.battery_capacity, a.max_velocity,
                 a.tank_capacity, a.confidence) for a in specs}) > 1:
            report.add("homogeneous", f"{kind_name} agents marked homogeneous but differ")

    return report


# --- preset catalog --------------------------------------------------------

# Canonical anchors on the 24x24 grid; presets draw the first N of each list.
_BASE_ANCHOR = (0, 10)
_HOUSE_ANCHORS = [(4, 2), (8, 2), (12, 2), (16, 2), (20, 2)]
_HOSPITAL_ANCHORS = [(4, 6), (8, 6)]
_POWER_ANCHORS = [(12, 6), (16, 6)]
_LAKE_ANCHORS = [(4, 18), (10, 18)]
_REGION_CELLS = [(18, 12), (20, 14), (14, 16), (16, 10)]

# id -> (houses, hospitals, power stations, lakes, perception, action,
#        firefronts, delays, fuels, wind speeds, wind azimuths)
_PRESET_TABLE: dict[str, tuple] = {
    "practice": (1, 1, 1, 1, 2, 2, [15], [0], [10], [5], [45]),
    "1": (5, 1, 1, 1, 2, 2, [10], [0], [10], [5], [45]),
    "2": (1, 1, 0, 1, 2, 1, [15], [60], [15], [3], [45]),
    "3": (1, 1, 1, 1, 1, 1, [5], [0], [15], [5], [45]),
    "4": (1, 1, 0, 1, 1, 1, [12], [60], [5], [3], [45]),
    "5": (2, 1, 1, 1, 3, 2, [3, 8], [0, 0], [5, 10], [5, 3], [45, 15]),
    "6": (2, 1, 1, 1, 2, 3, [5, 3], [60, 0], [10, 10], [5, 5], [45, 15]),
    "7": (2, 1, 1, 1, 3, 1, [3, 3], [0, 0], [5, 5], [5, 5], [135, 225]),
    "8": (2, 1, 1, 1, 3, 1, [5, 7], [0, 60], [3, 3], [10, 10], [135, 225]),
    "9": (2, 1, 1, 1, 2, 2, [5, 5], [0, 0], [10, 10], [5, 5], [45, 15]),
    "10": (2, 1, 1, 1, 2, 2, [5, 5], [60, 0], [10, 10], [5, 5], [45, 15]),
    "11": (2, 1, 1, 1, 2, 2, [5, 5], [0, 0], [5, 5], [5, 5], [135, 225]),
    "12": (2, 1, 1, 1, 3, 2, [3, 10], [0, 60], [5, 10], [5, 10], [135, 225]),
    "13": (5, 2, 1, 0, 2, 2, [3, 3, 3], [60, 0, 0], [10, 10, 10], [5, 5, 5], [75, 135, 225]),
    "14": (2, 1, 1, 1, 3, 2, [5, 5, 5], [0, 120, 60], [10, 10, 10], [5, 5, 5], [135, 315, 225]),
    "15": (5, 2, 1, 0, 3, 3, [3, 5, 7], [60, 0, 0], [10, 10, 10], [3, 5, 10], [75, 135, 225]),
    "16": (2, 1, 1, 1, 2, 3, [3, 5, 7], [0, 120, 60], [3, 5, 10], [5, 5, 5], [135, 315, 225]),
    "17": (4, 2, 2, 0, 4, 4, [5, 5, 5], [60, 0, 120], [10, 10, 10], [5, 5, 5], [75, 135, 225]),
    "18": (2, 1, 1, 1, 2, 3, [3, 3, 5], [0, 0, 0], [5, 5, 10], [3, 3, 5], [135, 315, 225]),
    "19": (4, 2, 2, 0, 2, 2, [5, 5, 5], [60, 0, 120], [10, 10, 10], [5, 5, 5], [75, 135, 225]),
    "20": (2, 1, 1, 1, 2, 1, [3, 3, 3], [0, 0, 0], [5, 5, 5], [5, 5, 5], [135, 315, 225]),
    "21": (4, 1, 2, 2, 4, 4, [5, 5, 5, 5], [60, 0, 0, 120], [10, 10, 10, 10], [5, 5, 5, 5], [75, 135, 135, 225]),
    "22": (4, 1, 2, 2, 3, 3, [5, 5, 5, 5], [0, 0, 0, 120], [5, 5, 10, 10], [5, 5, 5, 5], [75, 135, 135, 225]),
    "23": (4, 1, 2, 2, 3, 2, [3, 3, 5, 7], [60, 0, 0, 120], [3, 5, 3, 10], [5, 5, 5, 5], [75, 135, 135, 225]),
    "24": (4, 1, 2, 2, 2, 2, [3, 5, 7, 8], [0, 0, 0, 120], [8, 8, 8, 8], [3, 3, 3, 3], [75, 135, 135, 225]),
}


def preset_ids() -> list[str]:
    return list(_PRESET_TABLE)


def preset(scenario_id: str) -> ScenarioConfig:
    key = str(scenario_id).lower()
    if key not in _PRESET_TABLE:
        raise ValueError(f"unknown preset {scenario_id!r}; choose from {preset_ids()}")
    (houses, hospitals, powers, lakes, n_per, n_act,
     fronts, delays, fuels, winds, azimuths) = _PRESET_TABLE[key]

    world = GridWorld.from_units(DEFAULTS["world_size"], DEFAULTS["duration"])
    facilities = [Facility(FacilityKind.BASE, _BASE_ANCHOR, "vertical")]
    facilities += [Facility(FacilityKind.HOUSE, a) for a in _HOUSE_ANCHORS[:houses]]
    facilities += [Facility(FacilityKind.HOSPITAL, a) for a in _HOSPITAL_ANCHORS[:hospitals]]
    facilities += [Facility(FacilityKind.POWER_STATION, a) for a in _POWER_ANCHORS[:powers]]
    facilities += [Facility(FacilityKind.LAKE, a) for a in _LAKE_ANCHORS[:lakes]]

    regions = [FireRegion(cell=_REGION_CELLS[i], num_firefronts=fronts[i],
                          ignition_delay=float(delays[i]), fuel=float(fuels[i]),
                          wind_speed=float(winds[i]), wind_azimuth=float(azimuths[i]))
               for i in range(len(fronts))]

    agents = ([default_agent_spec(AgentKind.PERCEPTION)] * n_per
              + [default_agent_spec(AgentKind.ACTION)] * n_act)

    return ScenarioConfig(
        name=key,
        world=world,
        facilities=facilities,
        regions=regions,
        agents=agents,
        practice=(key == "practice"),
    )


def resolve_scenario(ref: str) -> ScenarioConfig:
    """Accept a preset id or a path to a scenario file."""
    key = str(ref).lower()
    if key in _PRESET_TABLE:
        return preset(key)
    return load(ref)
