import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from firecommander.fire import (FireModelParams, Firespot, SpotState,
                                decayed_intensity, flame_intensity,
                                ignite_region, length_to_breadth,
                                merge_coincident, radiated_intensity_at,
                                spread_rate, step_spot, wind_direction)
from firecommander.world import FireRegion

# Elliptical-geometry values computed once with an independent high-precision
# evaluator and frozen here; the implementation must match to 1e-12 relative.
LB_ORACLE = {
    0.0: 1.0,
    2.0: 1.5036290646929091,
    5.0: 3.1829038076243243,
    10.0: 11.809754695106157,
}
SPREAD_ORACLE = {
    (2.0, 2.0): 0.8550440075262093,
    (2.0, 5.0): 0.974024308142446,
    (2.0, 10.0): 0.9982010487252513,
    (10.0, 2.0): 4.275220037631047,
    (10.0, 5.0): 4.87012154071223,
    (10.0, 10.0): 4.991005243626256,
    (15.0, 2.0): 6.41283005644657,
    (15.0, 5.0): 7.305182311068345,
    (15.0, 10.0): 7.486507865439385,
}


def test_length_to_breadth_oracle():
    for u, expected in LB_ORACLE.items():
        assert length_to_breadth(u) == pytest.approx(expected, rel=1e-12)
    assert length_to_breadth(0.0) == 1.0  # exact in float64


def test_spread_rate_oracle():
    for (r, u), expected in SPREAD_ORACLE.items():
        assert spread_rate(r, u) == pytest.approx(expected, rel=1e-12)


def test_spread_rate_calm_wind_is_exactly_zero():
    for r in (2.0, 5.0, 10.0, 15.0):
        assert spread_rate(r, 0.0) == 0.0


def test_spread_rate_rejects_negative():
    with pytest.raises(ValueError):
        spread_rate(-1.0, 5.0)
    with pytest.raises(ValueError):
        spread_rate(10.0, -0.1)


@given(st.floats(0.0, 15.0), st.floats(0.0, 10.0))
def test_spread_rate_bounded_by_fuel(r, u):
    c = spread_rate(r, u)
    assert 0.0 <= c <= r + 1e-12


def test_wind_direction():
    for azimuth, expected in [
        (0.0, (0.0, 1.0)),
        (90.0, (1.0, 0.0)),
        (45.0, (0.7071067811865475, 0.7071067811865476)),
        (180.0, (0.0, -1.0)),
        (270.0, (-1.0, 0.0)),
    ]:
        dx, dy = wind_direction(azimuth)
        assert dx == pytest.approx(expected[0], abs=1e-12)
        assert dy == pytest.approx(expected[1], abs=1e-12)


@given(st.floats(0.0, 360.0, exclude_max=True))
def test_wind_direction_unit_norm(azimuth):
    dx, dy = wind_direction(azimuth)
    assert math.hypot(dx, dy) == pytest.approx(1.0, rel=1e-12)


def test_flame_intensity_oracle():
    assert flame_intensity(2.0, 0.0) == pytest.approx(1172.555797286951, rel=1e-12)
    assert flame_intensity(5.0, 0.0) == pytest.approx(8595.182394453816, rel=1e-12)
    assert flame_intensity(10.0, 45.0) == pytest.approx(82397.476826654, rel=1e-12)
    # Doubling the height matches halving the cosine of the tilt.
    assert flame_intensity(5.0, 60.0) == pytest.approx(
        flame_intensity(10.0, 0.0), rel=1e-12)


def test_decay_closed_form():
    assert decayed_intensity(100.0, 1.0, 0.05, 0.05) == pytest.approx(
        36.787944117144235, rel=1e-12)
    # A zero decay rate preserves intensity bit-for-bit.
    assert decayed_intensity(123.456, 99.0, 0.0, 7.0) == 123.456


@given(st.floats(1.0, 1e5), st.floats(0.0, 100.0), st.floats(0.0, 1.0),
       st.floats(0.01, 15.0))
def test_decay_monotone(ref, elapsed, lam, rate):
    now = decayed_intensity(ref, elapsed, lam, rate)
    later = decayed_intensity(ref, elapsed + 1.0, lam, rate)
    assert later <= now <= ref


REGION = FireRegion(cell=(8, 8), num_firefronts=4, ignition_delay=0.0,
                    fuel=5.0, wind_speed=5.0, wind_azimuth=90.0)


def _ignite(seed=1, region=REGION, now=0.0, first_id=0):
    rng = np.random.default_rng(seed)
    return ignite_region(region, 3, now, rng, FireModelParams(), first_id)


def test_ignite_region_places_spots_inside_cell():
    spots = _ignite()
    assert len(spots) == REGION.num_firefronts
    x0, y0, x1, y1 = REGION.rect_units()
    for i, s in enumerate(spots):
        assert s.spot_id == i
        assert s.region_index == 3
        assert x0 <= s.x <= x1 and y0 <= s.y <= y1
        assert s.ignited_at == 0.0
        assert s.state is SpotState.ACTIVE
        assert s.ref_intensity > 0.0
    assert [s.spot_id for s in _ignite(first_id=7)] == [7, 8, 9, 10]


def test_ignite_region_deterministic():
    a = _ignite(seed=42)
    b = _ignite(seed=42)
    assert [(s.x, s.y, s.ref_intensity) for s in a] == \
           [(s.x, s.y, s.ref_intensity) for s in b]
    c = _ignite(seed=43)
    assert [(s.x, s.y) for s in a] != [(s.x, s.y) for s in c]


def test_step_spot_moves_with_previous_velocity():
    params = FireModelParams(velocity_noise_sigma=0.0)
    rng = np.random.default_rng(0)
    spot = Firespot(spot_id=0, region_index=0, x=100.0, y=100.0,
                    vx=3.0, vy=-1.0, ignited_at=0.0, ref_intensity=5000.0,
                    ref_time=0.0, fuel=10.0, wind_speed=5.0, wind_azimuth=90.0)
    step_spot(spot, 0.1, 0.1, rng, params)
    # Position advances along the old velocity; the new velocity then points
    # downwind at the current spread rate.
    assert spot.x == pytest.approx(100.3, abs=1e-12)
    assert spot.y == pytest.approx(99.9, abs=1e-12)
    c = spread_rate(10.0, 5.0)
    assert spot.vx == pytest.approx(c, rel=1e-12)
    assert spot.vy == pytest.approx(0.0, abs=1e-12)


def test_step_spot_noise_is_seeded():
    params = FireModelParams()
    make = lambda: Firespot(0, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 5000.0, 0.0,
                            10.0, 5.0, 0.0)
    a, b = make(), make()
    rng_a, rng_b = np.random.default_rng(9), np.random.default_rng(9)
    step_spot(a, 0.1, 0.1, rng_a, params)
    step_spot(b, 0.1, 0.1, rng_b, params)
    assert (a.vx, a.vy) == (b.vx, b.vy)


def test_step_spot_burns_out_below_floor():
    params = FireModelParams(decay_rate=3.0)
    rng = np.random.default_rng(0)
    spot = Firespot(0, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.5, 0.0, 10.0, 5.0, 0.0)
    for k in range(1, 60):
        step_spot(spot, 0.1, 0.1 * k, rng, params)
        if spot.state is SpotState.BURNT:
            break
    assert spot.state is SpotState.BURNT
    assert spot.intensity(0.1 * k, params) < params.intensity_floor


def test_merge_coincident_sums_intensity():
    # Coincident means the same 1-unit integer cell.
    params = FireModelParams()
    a = Firespot(0, 0, 100.2, 100.9, 1.0, 0.0, 0.0, 4000.0, 0.0, 10.0, 5.0, 0.0)
    b = Firespot(1, 0, 100.7, 100.1, 3.0, 0.0, 0.0, 2000.0, 0.0, 10.0, 5.0, 0.0)
    b.ever_sensed = True
    far = Firespot(2, 0, 101.5, 100.0, 0.0, 0.0, 0.0, 1000.0, 0.0, 10.0, 5.0, 0.0)
    merges = merge_coincident([a, b, far], now=2.0, params=params)
    assert merges == [(0, [1])]  # min id survives; the far spot is untouched
    ia = decayed_intensity(4000.0, 2.0, params.decay_rate, 10.0)
    ib = decayed_intensity(2000.0, 2.0, params.decay_rate, 10.0)
    assert a.ref_intensity == pytest.approx(ia + ib, rel=1e-12)
    assert a.ref_time == 2.0
    assert (a.x, a.y) == (100.0, 100.0)  # snapped to the shared cell corner
    assert a.ever_sensed and a.state is SpotState.SENSED  # lineage survives
    # Velocity blends weighted by the merged intensities.
    assert a.vx == pytest.approx((1.0 * ia + 3.0 * ib) / (ia + ib), rel=1e-12)


def test_merge_keeps_earliest_ignition():
    params = FireModelParams()
    a = Firespot(5, 0, 100.4, 100.4, 0.0, 0.0, 3.0, 4000.0, 3.0, 10.0, 5.0, 0.0)
    b = Firespot(6, 0, 100.6, 100.6, 0.0, 0.0, 1.0, 2000.0, 1.0, 10.0, 5.0, 0.0)
    merge_coincident([a, b], now=4.0, params=params)
    assert a.ignited_at == 1.0


def test_radiated_intensity_cutoff():
    params = FireModelParams()
    spot = Firespot(0, 0, 100.0, 100.0, 0.0, 0.0, 0.0, 1000.0, 0.0, 10.0, 5.0, 0.0)
    at_center = radiated_intensity_at([spot], 100.0, 100.0, 0.0, params)
    nearby = radiated_intensity_at([spot], 110.0, 100.0, 0.0, params)
    outside = radiated_intensity_at([spot], 100.0 + params.radiation_radius + 1.0,
                                    100.0, 0.0, params)
    assert at_center > nearby > 0.0
    assert outside == 0.0
