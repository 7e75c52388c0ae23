#!/usr/bin/env python3
"""Emit the shared constants module the web client compiles against.

The client must enforce the same scenario bounds the server does, and the
only way to keep two languages honest about one schema is to generate one
side from the other. This script renders the validation ranges, defaults,
penalty table, and protocol constants into a TypeScript module. Rerun it
after changing anything in firecommander.scenarios and commit the result;
the frontend test suite fails if the committed file drifts.

    python3 scripts/gen_ui_constants.py            # writes frontend/src/bounds.gen.ts
    python3 scripts/gen_ui_constants.py --out -    # prints to stdout
"""

from __future__ import annotations

import argparse
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from firecommander import scenarios, server, world  # noqa: E402

_DEFAULT_OUT = os.path.join(os.path.dirname(__file__), os.pardir,
                            "frontend", "src", "bounds.gen.ts")


def _ts_value(value: object) -> str:
    # Tuples become arrays; everything else survives the JSON round trip.
    if isinstance(value, tuple):
        value = list(value)
    return json.dumps(value)


def _ts_object(mapping: dict) -> str:
    lines = ["{"]
    for key in sorted(mapping):
        lines.append(f"  {json.dumps(key)}: {_ts_value(mapping[key])},")
    lines.append("}")
    return "\n".join(lines)


def render() -> str:
    penalties = {kind.value: coef
                 for kind, coef in world.PENALTY_COEFFICIENTS.items()}
    colors = {kind.value: color
              for kind, color in world.DISPLAY_COLORS.items()}
    colors["grass"] = world.GRASS_COLOR
    colors["fire"] = world.FIRE_COLOR
    footprints = {kind.value: list(cells)
                  for kind, cells in world._FOOTPRINTS.items()}
    for orientation, cells in world.BASE_FOOTPRINTS.items():
        footprints[f"base_{orientation}"] = list(cells)
    parts = [
        "// Generated by scripts/gen_ui_constants.py. Do not edit by hand;",
        "// rerun the script after changing the scenario schema.",
        "",
        f"export const PROTOCOL_VERSION = {server.PROTOCOL_VERSION};",
        f"export const DEFAULT_PORT = {int(os.environ.get('FIRECOMMANDER_PORT', '8431'))};",
        f"export const CELL_UNITS = {world.CELL_UNITS};",
        f"export const SCHEMA_VERSION = {scenarios.SCHEMA_VERSION};",
        "",
        "// Closed [lo, hi] bounds except wind_azimuth, which excludes the",
        "// high end; plural list entries enumerate the only legal choices.",
        f"export const RANGES = {_ts_object(scenarios.RANGES)} as const;",
        "",
        f"export const DEFAULTS = {_ts_object(scenarios.DEFAULTS)} as const;",
        "",
        "// Penalty per firespot inside the footprint, per scored second.",
        f"export const PENALTY_COEFFICIENTS = {_ts_object(penalties)} as const;",
        "",
        "// Map palette, keyed by facility kind plus the two ground states.",
        f"export const DISPLAY_COLORS = {_ts_object(colors)} as const;",
        "",
        "// Placement-cell footprints as [width, height]; the base has one",
        "// entry per orientation.",
        f"export const FOOTPRINTS = {_ts_object(footprints)} as const;",
        "",
        f"export const AGENT_KINDS = {_ts_value([k.name.lower() for k in scenarios.AgentKind])} as const;",
        f"export const FACILITY_KINDS = {_ts_value([k.value for k in world.FacilityKind])} as const;",
        "",
    ]
    return "\n".join(parts)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=_DEFAULT_OUT,
                        help="output path, or - for stdout")
    args = parser.parse_args(argv)

    text = render()
    if args.out == "-":
        sys.stdout.write(text)
        return 0
    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {os.path.relpath(args.out)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
