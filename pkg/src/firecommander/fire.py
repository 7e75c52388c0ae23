"""Wildfire propagation, intensity and firespot lifecycle.

Fires are point masses ("firespots") carried downwind. Each tick a spot moves
with its previous velocity, then re-derives that velocity from the elliptic
spread model: speed is the nominal fuel rate scaled by an eccentricity factor
that grows with wind speed, direction follows the wind azimuth (measured
clockwise from +Y, so azimuth 0 drifts along +Y and 90 along +X), plus
optional Gaussian noise per axis. Intensity follows a flame-length power law
at ignition and decays exponentially with time-since-ignition over the fuel
rate. A spot whose intensity falls below the floor burns out; one knocked
below the floor by retardant is pruned. Spots that wander into the same
1-unit integer cell merge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .world import FireRegion

INTENSITY_SCALE = 259.833
INTENSITY_EXPONENT = 2.174
FLAME_HEIGHT_RANGE = (2.0, 10.0)  # metres, sampled per front at ignition
TILT_RANGE_DEG = (0.0, 45.0)


@dataclass(frozen=True)
class FireModelParams:
    decay_rate: float = 0.05  # lambda in the intensity decay exponent
    intensity_floor: float = 1.0  # kW/m; below this a spot is out
    radiation_radius: float = 25.0  # display-only halo extent, units
    velocity_noise_sigma: float = 0.1  # per-axis Gaussian on spot velocity
    extinguish_coefficient: float = 1.0  # fraction of intensity removed per hit


def length_to_breadth(wind_speed: float) -> float:
    """Elliptic eccentricity proxy; equals 1 in still air, grows with wind."""
    u = wind_speed
    return 0.936 * math.exp(0.256 * u) + 0.461 * math.exp(-0.154 * u) - 0.397


def spread_rate(fuel: float, wind_speed: float) -> float:
    """Downwind propagation speed for a nominal fuel rate and wind.

    Zero in still air (the ellipse degenerates to a point source), approaches
    the fuel rate as wind grows. Rounding can push the squared eccentricity
    term a hair negative, so it is clamped before the square root.
    """
    if fuel < 0 or wind_speed < 0:
        raise ValueError("fuel and wind speed must be nonnegative")
    lb = length_to_breadth(wind_speed)
    gb = max(lb * lb - 1.0, 0.0)
    return fuel * (1.0 - lb / (lb + math.sqrt(gb)))


def wind_direction(azimuth_deg: float) -> tuple[float, float]:
    theta = math.radians(azimuth_deg)
    return math.sin(theta), math.cos(theta)


def flame_intensity(flame_height: float, tilt_deg: float) -> float:
    """Fireline intensity from flame height and tilt angle, kW/m."""
    if flame_height < 0:
        raise ValueError("flame height must be nonnegative")
    if flame_height == 0:
        return 0.0
    tilted = flame_height / math.cos(math.radians(tilt_deg))
    return INTENSITY_SCALE * tilted ** INTENSITY_EXPONENT


def decayed_intensity(ref_intensity: float, elapsed: float,
                      decay_rate: float, fuel: float) -> float:
    return ref_intensity * math.exp(-decay_rate * elapsed / fuel)


class SpotState(Enum):
    ACTIVE = "active"  # burning, not yet seen by any agent
    SENSED = "sensed"  # burning and known to the operator
    PRUNED = "pruned"  # extinguished by an agent
    BURNT = "burnt"  # decayed out on its own

    @property
    def live(self) -> bool:
        return self in (SpotState.ACTIVE, SpotState.SENSED)


@dataclass
class LastSeen:
    """Operator-visible snapshot, frozen whenever the spot leaves all FOVs."""

    x: float
    y: float
    intensity: float
    vx: float
    vy: float
    tick: int


@dataclass
class Firespot:
    spot_id: int
    region_index: int
    x: float
    y: float
    vx: float
    vy: float
    ignited_at: float  # seconds
    ref_intensity: float
    ref_time: float  # seconds; decay is measured from here
    fuel: float
    wind_speed: float
    wind_azimuth: float
    state: SpotState = SpotState.ACTIVE
    ever_sensed: bool = False
    last_seen: LastSeen | None = None

    def intensity(self, now: float, params: FireModelParams) -> float:
        return decayed_intensity(self.ref_intensity, now - self.ref_time,
                                 params.decay_rate, self.fuel)


def ignite_region(region: FireRegion, region_index: int, now: float,
                  rng: np.random.Generator, params: FireModelParams,
                  first_id: int) -> list[Firespot]:
    """Spawn the region's firefronts uniformly inside its cell.

    Draw order per front is fixed (x, y, flame height, tilt, noise x, noise y)
    so traces replay bit-exactly.
    """
    x0, y0, x1, y1 = region.rect_units()
    rate = spread_rate(region.fuel, region.wind_speed)
    dx, dy = wind_direction(region.wind_azimuth)
    spots = []
    for k in range(region.num_firefronts):
        x = float(rng.uniform(x0, x1))
        y = float(rng.uniform(y0, y1))
        height = float(rng.uniform(*FLAME_HEIGHT_RANGE))
        tilt = float(rng.uniform(*TILT_RANGE_DEG))
        nx = float(rng.normal(0.0, params.velocity_noise_sigma))
        ny = float(rng.normal(0.0, params.velocity_noise_sigma))
        spots.append(Firespot(
            spot_id=first_id + k,
            region_index=region_index,
            x=x, y=y,
            vx=rate * dx + nx, vy=rate * dy + ny,
            ignited_at=now,
            ref_intensity=flame_intensity(height, tilt),
            ref_time=now,
            fuel=region.fuel,
            wind_speed=region.wind_speed,
            wind_azimuth=region.wind_azimuth,
        ))
    return spots


def step_spot(spot: Firespot, dt: float, now: float,
              rng: np.random.Generator, params: FireModelParams) -> None:
    """Advance one live spot by dt, ending at clock `now`.

    Position integrates the previous velocity; the new velocity is re-derived
    from the spread model afterwards. Intensity is re-evaluated from the
    reference closed form, never compounded tick by tick.
    """
    spot.x += spot.vx * dt
    spot.y += spot.vy * dt
    rate = spread_rate(spot.fuel, spot.wind_speed)
    dx, dy = wind_direction(spot.wind_azimuth)
    spot.vx = rate * dx + float(rng.normal(0.0, params.velocity_noise_sigma))
    spot.vy = rate * dy + float(rng.normal(0.0, params.velocity_noise_sigma))
    if spot.intensity(now, params) < params.intensity_floor:
        spot.state = SpotState.BURNT


def merge_coincident(spots: list[Firespot], now: float,
                     params: FireModelParams) -> list[tuple[int, list[int]]]:
    """Merge live spots sharing a 1-unit integer cell, in place.

    The survivor keeps the smallest participating id, sits at the cell corner,
    sums the parents' current intensities (rebased at `now`), carries their
    intensity-weighted mean velocity and the earliest ignition time. Sensing
    lineage survives: if any parent was sensed the merged spot stays sensed.
    Returns (survivor_id, absorbed_ids) pairs; absorbed spots must be dropped
    from tracking by the caller.
    """
    buckets: dict[tuple[int, int], list[Firespot]] = {}
    for spot in spots:
        if spot.state.live:
            key = (math.floor(spot.x), math.floor(spot.y))
            buckets.setdefault(key, []).append(spot)

    merges = []
    for (cx, cy), group in buckets.items():
        if len(group) < 2:
            continue
        group.sort(key=lambda s: s.spot_id)
        survivor = group[0]
        intensities = [s.intensity(now, params) for s in group]
        total = sum(intensities)
        if total > 0.0:
            survivor.vx = sum(w * s.vx for w, s in zip(intensities, group)) / total
            survivor.vy = sum(w * s.vy for w, s in zip(intensities, group)) / total
        earliest = min(group, key=lambda s: (s.ignited_at, s.spot_id))
        survivor.x = float(cx)
        survivor.y = float(cy)
        survivor.ref_intensity = total
        survivor.ref_time = now
        survivor.ignited_at = earliest.ignited_at
        survivor.region_index = earliest.region_index
        survivor.fuel = earliest.fuel
        survivor.wind_speed = earliest.wind_speed
        survivor.wind_azimuth = earliest.wind_azimuth
        if any(s.ever_sensed for s in group):
            survivor.ever_sensed = True
            survivor.state = SpotState.SENSED
            sensed = [s for s in group if s.last_seen is not None]
            if survivor.last_seen is None and sensed:
                survivor.last_seen = replace(sensed[0].last_seen)
        merges.append((survivor.spot_id, [s.spot_id for s in group[1:]]))
    return merges


def radiated_intensity_at(spots: list[Firespot], x: float, y: float,
                          now: float, params: FireModelParams) -> float:
    """Gaussian-falloff heat felt at a point from nearby live spots.

    Display-only: drives map shading, never the dynamics. Contributions
    vanish outside the radiation radius; sigma is a third of it.
    """
    sigma = params.radiation_radius / 3.0
    total = 0.0
    for spot in spots:
        if not spot.state.live:
            continue
        d2 = (spot.x - x) ** 2 + (spot.y - y) ** 2
        if d2 > params.radiation_radius ** 2:
            continue
        total += spot.intensity(now, params) * math.exp(-d2 / (2.0 * sigma * sigma))
    return total
