#!/usr/bin/env python3
"""Run a baseline policy across the scenario catalog and tabulate scores.

Useful as a regression canary (the numbers are deterministic per seed) and
as a quick read on how scenario difficulty scales with region count, wind,
and team size. With --seeds > 1 the table reports per-preset means.

    python3 scripts/preset_sweep.py                   # sweep policy, seed 1
    python3 scripts/preset_sweep.py --policy idle
    python3 scripts/preset_sweep.py --seeds 5 --json
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from firecommander import policies, scenarios, sim  # noqa: E402

_COLUMNS = ("perception", "action", "facility", "nrr", "final")


def sweep_one(preset_id: str, policy_name: str, seeds: list[int]) -> dict:
    config = scenarios.preset(preset_id)
    rows = []
    started = time.perf_counter()
    for seed in seeds:
        summary = sim.run_headless(config, policies.get_policy(policy_name),
                                   seed=seed)
        rows.append(summary.to_mapping())
    elapsed = time.perf_counter() - started
    out = {
        "preset": preset_id,
        "regions": len(config.regions),
        "agents": len(config.agents),
        "seconds": elapsed,
        "verbal": rows[-1]["verbal"],
    }
    for key in _COLUMNS:
        out[key] = statistics.fmean(r[key] for r in rows)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--policy", default="sweep",
                        help="builtin policy name or script path (default: sweep)")
    parser.add_argument("--seeds", type=int, default=1,
                        help="number of seeds per preset, starting at --seed")
    parser.add_argument("--seed", type=int, default=1, help="first seed")
    parser.add_argument("--only", nargs="*", metavar="ID",
                        help="limit to these preset ids")
    parser.add_argument("--json", action="store_true", dest="as_json")
    args = parser.parse_args(argv)

    seeds = list(range(args.seed, args.seed + args.seeds))
    ids = args.only if args.only else scenarios.preset_ids()
    results = [sweep_one(pid, args.policy, seeds) for pid in ids]

    if args.as_json:
        json.dump({"policy": args.policy, "seeds": seeds, "results": results},
                  sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0

    header = f"{'preset':>8} {'rgn':>3} {'agt':>3}" + "".join(
        f" {c[:10]:>10}" for c in _COLUMNS) + f" {'verbal':<14} {'sec':>6}"
    print(f"policy={args.policy} seeds={seeds}")
    print(header)
    print("-" * len(header))
    for row in results:
        cells = "".join(f" {row[c]:>10.1f}" for c in _COLUMNS)
        print(f"{row['preset']:>8} {row['regions']:>3} {row['agents']:>3}"
              f"{cells} {row['verbal']:<14} {row['seconds']:>6.2f}")
    finals = [r["final"] for r in results]
    print(f"mean final over {len(results)} presets: {statistics.fmean(finals):.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
