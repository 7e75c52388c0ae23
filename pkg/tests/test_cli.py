import json
import subprocess
import sys

import pytest
import yaml

from firecommander.scenarios import save

from conftest import small_scenario


def run_cli(*args: str):
    return subprocess.run([sys.executable, "-m", "firecommander", *args],
                          capture_output=True, text=True, timeout=120)


@pytest.fixture(scope="module")
def scenario_file(tmp_path_factory) -> str:
    path = tmp_path_factory.mktemp("cli") / "small.yaml"
    save(small_scenario(), str(path))
    return str(path)


@pytest.fixture(scope="module")
def episode_log(scenario_file, tmp_path_factory) -> str:
    path = tmp_path_factory.mktemp("cli-log") / "episode.fclog"
    proc = run_cli("run", scenario_file, "--policy", "idle", "--log", str(path))
    assert proc.returncode == 0, proc.stderr
    return str(path)


def test_no_arguments_is_usage_error():
    proc = run_cli()
    assert proc.returncode == 2


def test_presets_table():
    proc = run_cli("presets")
    assert proc.returncode == 0
    assert "practice" in proc.stdout
    assert " 24 " in proc.stdout or "24" in proc.stdout.split()


def test_presets_json():
    proc = run_cli("presets", "--json")
    rows = json.loads(proc.stdout)
    assert len(rows) == 25
    assert {"id", "regions", "firefronts", "perception_agents",
            "action_agents"} <= set(rows[0])


def test_presets_show_is_loadable_yaml():
    proc = run_cli("presets", "--show", "7")
    assert proc.returncode == 0
    doc = yaml.safe_load(proc.stdout)
    assert doc["name"] == "7"


def test_presets_show_unknown_id():
    proc = run_cli("presets", "--show", "99")
    assert proc.returncode == 2


def test_validate_ok(scenario_file):
    proc = run_cli("validate", scenario_file)
    assert proc.returncode == 0
    assert "ok" in proc.stdout.lower()


def test_validate_reports_violations(tmp_path, scenario_file):
    text = open(scenario_file).read().replace("wind_speed: 5.0",
                                              "wind_speed: 50.0")
    bad = tmp_path / "bad.yaml"
    bad.write_text(text)
    proc = run_cli("validate", str(bad))
    assert proc.returncode == 1
    assert "wind" in (proc.stdout + proc.stderr).lower()

    garbled = tmp_path / "garbled.yaml"
    garbled.write_text(":\n - [")
    plain = run_cli("validate", str(garbled))
    assert plain.returncode == 1
    as_json = run_cli("validate", str(garbled), "--json")
    assert as_json.returncode == 1
    payload = json.loads(as_json.stdout)
    assert payload["ok"] is False


def test_run_unknown_scenario_is_usage_error():
    proc = run_cli("run", "nonexistent-scenario")
    assert proc.returncode == 2


def test_run_unknown_policy_is_usage_error(scenario_file):
    proc = run_cli("run", scenario_file, "--policy", "warp")
    assert proc.returncode == 2


def test_run_plain_summary(scenario_file):
    proc = run_cli("run", scenario_file, "--max-ticks", "50")
    assert proc.returncode == 0
    out = proc.stdout.lower()
    assert "ticks" in out and "final" in out


def test_run_json_summary(scenario_file):
    proc = run_cli("run", scenario_file, "--max-ticks", "50", "--json")
    summary = json.loads(proc.stdout)
    assert summary["ticks"] == 50
    assert summary["scenario"] == "small"


def test_run_seed_flag(scenario_file):
    a = run_cli("run", scenario_file, "--seed", "9", "--json")
    b = run_cli("run", scenario_file, "--seed", "9", "--json")
    assert json.loads(a.stdout) == json.loads(b.stdout)
    assert json.loads(a.stdout)["seed"] == 9


def test_replay_verifies(episode_log):
    proc = run_cli("replay", episode_log)
    assert proc.returncode == 0
    assert "bit-exact" in proc.stdout


def test_replay_rejects_corruption(episode_log, tmp_path):
    data = bytearray(open(episode_log, "rb").read())
    data[len(data) // 2] ^= 0xFF
    broken = tmp_path / "broken.fclog"
    broken.write_bytes(bytes(data))
    proc = run_cli("replay", str(broken))
    assert proc.returncode == 1
    assert proc.stderr.strip()


def test_replay_exports_frames(episode_log, tmp_path):
    out = tmp_path / "frames"
    proc = run_cli("replay", episode_log, "--frames", str(out), "--every", "100")
    assert proc.returncode == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["every_n_ticks"] == 100
    assert all((out / name).exists() for name in manifest["frames"])


def test_replay_to_script(episode_log, tmp_path):
    out = tmp_path / "commands.yaml"
    proc = run_cli("replay", episode_log, "--to-script", str(out))
    assert proc.returncode == 0
    assert yaml.safe_load(out.read_text()) == []  # idle run issued nothing


def test_stats_table(episode_log):
    proc = run_cli("stats", episode_log)
    assert proc.returncode == 0
    assert "footer" in proc.stdout.lower()


def test_stats_json(episode_log):
    proc = run_cli("stats", episode_log, "--json")
    report = json.loads(proc.stdout)
    assert report["footer_present"] is True
    assert report["truncated"] is False


def test_serve_smoke():
    proc = run_cli("serve", "--smoke", "--port", "8499")
    assert proc.returncode == 0
    assert proc.stdout.startswith("ok:")
