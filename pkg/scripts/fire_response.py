#!/usr/bin/env python3
"""Tabulate the fire model's response to wind, fuel, and decay settings.

Three small tables, no simulation involved: the elliptical elongation
ratio and the resulting downwind spread fraction per wind speed, the
spread rate over the legal fuel x wind grid, and the time for a spot of
median ignition intensity to decay below the burnout floor. Handy when
retuning scenario difficulty: it shows how long a fire stays alive and
how far it travels before an unattended burnout.

    python3 scripts/fire_response.py
    python3 scripts/fire_response.py --decay-rate 0.1
"""

from __future__ import annotations

import argparse
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from firecommander import fire, scenarios  # noqa: E402


def burnout_seconds(ref_intensity: float, fuel: float, decay_rate: float,
                    floor: float) -> float:
    if decay_rate <= 0.0:
        return math.inf
    # Invert ref * exp(-rate * t / fuel) = floor for t.
    return fuel / decay_rate * math.log(ref_intensity / floor)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = fire.FireModelParams()
    parser.add_argument("--decay-rate", type=float, default=defaults.decay_rate)
    parser.add_argument("--floor", type=float, default=defaults.intensity_floor,
                        help="burnout intensity floor")
    args = parser.parse_args(argv)

    wind_lo, wind_hi = scenarios.RANGES["wind_speed"]
    fuel_lo, fuel_hi = scenarios.RANGES["fuel"]
    winds = list(range(wind_lo, wind_hi + 1))
    fuels = list(range(fuel_lo, fuel_hi + 1, 2))

    print("elongation and downwind spread fraction")
    print(f"{'wind':>5} {'l/b ratio':>10} {'fraction':>9}")
    for u in winds:
        lb = fire.length_to_breadth(u)
        fraction = fire.spread_rate(1.0, u)  # unit fuel isolates the shape term
        print(f"{u:>5} {lb:>10.4f} {fraction:>9.4f}")

    print()
    print("spread rate, units per second (fuel rows, wind columns)")
    print(f"{'fuel':>5}" + "".join(f" {u:>7}" for u in winds))
    for fuel_value in fuels:
        cells = "".join(f" {fire.spread_rate(fuel_value, u):>7.3f}" for u in winds)
        print(f"{fuel_value:>5}{cells}")

    # Median draw: flame height 6 of U[2,10], tilt 22.5 deg of U[0,45].
    median_intensity = fire.flame_intensity(6.0, 22.5)
    print()
    print(f"burnout horizon at median ignition intensity "
          f"{median_intensity:.0f} (floor {args.floor:g}, "
          f"decay rate {args.decay_rate:g})")
    print(f"{'fuel':>5} {'seconds':>8} {'downwind units at wind 5':>25}")
    rate_at_5 = {f: fire.spread_rate(f, 5.0) for f in fuels}
    for fuel_value in fuels:
        t = burnout_seconds(median_intensity, fuel_value, args.decay_rate,
                            args.floor)
        reach = rate_at_5[fuel_value] * t
        print(f"{fuel_value:>5} {t:>8.1f} {reach:>25.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
