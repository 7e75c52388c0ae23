"""Command-line entry points.

Exit codes: 0 on success, 1 when an operation fails (invalid scenario,
divergent log, lost episode), 2 for unusable arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import logs, policies, scenarios, sim

_JSON_KW = {"sort_keys": True, "indent": 2}


def _fail(message: str, code: int = 1) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _resolve(ref: str) -> scenarios.ScenarioConfig:
    try:
        return scenarios.resolve_scenario(ref)
    except FileNotFoundError:
        raise SystemExit(_fail(f"no such scenario: {ref}", 2))
    except ValueError as exc:
        raise SystemExit(_fail(str(exc), 2))


def cmd_run(args: argparse.Namespace) -> int:
    config = _resolve(args.scenario)
    report = scenarios.validate(config)
    if not report.ok:
        for v in report.violations:
            print(f"invalid: {v.code}: {v.message}", file=sys.stderr)
        return 1
    try:
        policy = policies.get_policy(args.policy)
    except (OSError, ValueError) as exc:
        return _fail(f"policy {args.policy!r}: {exc}", 2)

    recorder = None
    log_file = None
    if args.log:
        log_file = open(args.log, "wb")
        recorder = logs.LogWriter(log_file, created_at=args.stamp)
    try:
        summary = sim.run_headless(config, policy=policy, seed=args.seed,
                                   recorder=recorder, max_ticks=args.max_ticks)
    finally:
        if log_file is not None:
            log_file.close()

    if args.json:
        print(json.dumps(summary.to_mapping(), **_JSON_KW))
    else:
        m = summary.to_mapping()
        print(f"scenario {m['scenario']}  seed {m['seed']}  "
              f"{m['ticks']} ticks ({m['clock']:.1f} s)")
        print(f"fires: spawned {m['spawned']}  pruned {m['pruned']}  "
              f"burnt out {m['burnt']}  still live {m['active'] + m['sensed']}")
        print(f"scores: perception {m['perception']:.2f}  action {m['action']:.2f}  "
              f"facility {m['facility']:.2f}  negative-reward ratio {m['nrr']:.2f}")
        print(f"final {m['final']:.2f}  ->  {m['verbal']}")
        if args.log:
            print(f"episode written to {args.log}")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        config = scenarios.load(args.path)
    except FileNotFoundError:
        return _fail(f"no such file: {args.path}", 2)
    except ValueError as exc:
        if args.json:
            print(json.dumps({"ok": False, "violations": [
                {"code": "parse", "message": str(exc)}]}, **_JSON_KW))
        else:
            print(f"invalid: parse: {exc}")
        return 1
    report = scenarios.validate(config)
    if args.json:
        print(json.dumps({"ok": report.ok, "violations": [
            {"code": v.code, "message": v.message} for v in report.violations
        ]}, **_JSON_KW))
    else:
        if report.ok:
            print(f"ok: {config.name} is a valid scenario")
        for v in report.violations:
            print(f"invalid: {v.code}: {v.message}")
    return 0 if report.ok else 1


def cmd_presets(args: argparse.Namespace) -> int:
    if args.show:
        config = _resolve(args.show)
        print(scenarios.dumps(config), end="")
        return 0
    rows = []
    for sid in scenarios.preset_ids():
        config = scenarios.preset(sid)
        n_per = sum(1 for a in config.agents if not a.kind.acts)
        n_act = sum(1 for a in config.agents if a.kind.acts)
        rows.append({
            "id": sid,
            "regions": len(config.regions),
            "firefronts": config.total_firefronts,
            "perception_agents": n_per,
            "action_agents": n_act,
            "facilities": len(config.facilities),
            "practice": config.practice,
        })
    if args.json:
        print(json.dumps(rows, **_JSON_KW))
    else:
        print(f"{'id':>9}  regions  fronts  sensing  acting  facilities")
        for r in rows:
            print(f"{r['id']:>9}  {r['regions']:7d}  {r['firefronts']:6d}  "
                  f"{r['perception_agents']:7d}  {r['action_agents']:6d}  "
                  f"{r['facilities']:10d}")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    try:
        doc = logs.read_log(args.log)
    except FileNotFoundError:
        return _fail(f"no such file: {args.log}", 2)
    except logs.LogIntegrityError as exc:
        return _fail(str(exc))

    if args.to_script:
        entries = [policies.ScriptEntry(tick=t, command=sim.replay_command(c))
                   for t, c in logs.command_stream(doc)]
        with open(args.to_script, "w", encoding="utf-8") as fh:
            fh.write(policies.dump_script(entries))
        print(f"{len(entries)} commands -> {args.to_script}")
        return 0

    try:
        if args.frames:
            names = logs.export_frames(doc, every_n_ticks=args.every,
                                       out_dir=args.frames,
                                       interpolate=args.interpolate)
            result = logs.replay(doc)
            extra = f", {len(names)} frames -> {args.frames}"
        else:
            result = logs.replay(doc)
            extra = ""
    except logs.LogIntegrityError as exc:
        return _fail(str(exc))
    verdict = "verified"
    if result.truncated:
        verdict = "verified (truncated log, partial episode)"
    if args.json:
        print(json.dumps({"ok": True, "ticks": result.ticks,
                          "truncated": result.truncated,
                          "summary": result.summary.to_mapping()}, **_JSON_KW))
    else:
        print(f"{verdict}: {result.ticks} ticks replayed bit-exact{extra}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        report = logs.stats(args.log)
    except FileNotFoundError:
        return _fail(f"no such file: {args.log}", 2)
    except logs.LogIntegrityError as exc:
        return _fail(str(exc))
    if args.json:
        print(json.dumps(report.to_mapping(), **_JSON_KW))
    else:
        m = report.summary.to_mapping()
        print(f"scenario {report.scenario}  seed {report.seed}  "
              f"{report.ticks} ticks  footer "
              f"{'present' if report.footer_present else 'missing'}")
        for key in ("spawned", "ever_sensed", "pruned", "burnt"):
            print(f"  {key:>16}: {m[key]}")
        for key in ("overall", "perception", "action", "facility", "nrr", "final"):
            print(f"  {key:>16}: {m[key]:.4f}")
        print(f"  {'verbal':>16}: {m['verbal']}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from . import server

    app = server.create_app(static_dir=args.static,
                            ticks_per_second=args.ticks_per_second,
                            out_dir=args.out_dir)
    if args.smoke:
        import socket

        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        try:
            probe.bind((args.host, args.port))
        except OSError as exc:
            return _fail(f"cannot bind {args.host}:{args.port}: {exc}")
        finally:
            probe.close()
        print(f"ok: app ready, {args.host}:{args.port} bindable")
        return 0

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="firecommander",
        description="Wildfire response simulation: run, check, replay, serve.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an episode headlessly")
    p.add_argument("scenario", help="preset id (practice, 1..24) or scenario file")
    p.add_argument("--seed", type=int, default=None,
                   help="override the scenario seed")
    p.add_argument("--policy", default="idle",
                   help="idle, sweep, or a command-script file")
    p.add_argument("--log", default=None, help="record the episode here")
    p.add_argument("--stamp", type=float, default=0.0,
                   help="creation stamp for the log header")
    p.add_argument("--max-ticks", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate", help="check a scenario file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("presets", help="list the built-in scenarios")
    p.add_argument("--show", default=None, metavar="ID",
                   help="print one preset as a scenario file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("replay", help="verify a log by re-simulation")
    p.add_argument("log")
    p.add_argument("--frames", default=None, metavar="DIR",
                   help="also export snapshot frames")
    p.add_argument("--every", type=int, default=10,
                   help="frame stride in ticks (default one per scored second)")
    p.add_argument("--interpolate", type=int, default=1,
                   help="subframes per frame with extrapolated agent motion")
    p.add_argument("--to-script", default=None, metavar="PATH",
                   help="extract the command stream as a script file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("stats", help="recompute and cross-check log scores")
    p.add_argument("log")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("serve", help="start the interactive session server")
    p.add_argument("--host", default=os.environ.get("FIRECOMMANDER_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("FIRECOMMANDER_PORT", "8431")))
    p.add_argument("--static", default=None,
                   help="directory of web client files to serve at /")
    p.add_argument("--out-dir", default=None,
                   help="where saved playbacks and frame exports land "
                        "(default: current directory)")
    p.add_argument("--ticks-per-second", type=float, default=10.0,
                   help="wall-clock pacing (10 = real time)")
    p.add_argument("--smoke", action="store_true",
                   help="build the app, check the port, and exit")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
