import pytest

from firecommander.agents import AgentKind, AgentSpec
from firecommander.scenarios import (DEFAULTS, RANGES, ScenarioConfig,
                                     default_agent_spec, dumps, from_mapping,
                                     load, loads, preset, preset_ids,
                                     resolve_scenario, save, to_mapping,
                                     validate)
from firecommander.world import FacilityKind

from conftest import small_scenario

# The shipped catalog, re-transcribed by hand from the source tables rather
# than imported, so a typo in either copy fails this test. Columns: houses,
# hospitals, power stations, lakes, perception craft, action craft, then the
# per-region firefronts, delays, fuels, wind speeds and wind azimuths.
GOLDEN_CATALOG = {
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
    "13": (5, 2, 1, 0, 2, 2, [3, 3, 3], [60, 0, 0], [10, 10, 10], [5, 5, 5],
           [75, 135, 225]),
    "14": (2, 1, 1, 1, 3, 2, [5, 5, 5], [0, 120, 60], [10, 10, 10], [5, 5, 5],
           [135, 315, 225]),
    "15": (5, 2, 1, 0, 3, 3, [3, 5, 7], [60, 0, 0], [10, 10, 10], [3, 5, 10],
           [75, 135, 225]),
    "16": (2, 1, 1, 1, 2, 3, [3, 5, 7], [0, 120, 60], [3, 5, 10], [5, 5, 5],
           [135, 315, 225]),
    "17": (4, 2, 2, 0, 4, 4, [5, 5, 5], [60, 0, 120], [10, 10, 10], [5, 5, 5],
           [75, 135, 225]),
    "18": (2, 1, 1, 1, 2, 3, [3, 3, 5], [0, 0, 0], [5, 5, 10], [3, 3, 5],
           [135, 315, 225]),
    "19": (4, 2, 2, 0, 2, 2, [5, 5, 5], [60, 0, 120], [10, 10, 10], [5, 5, 5],
           [75, 135, 225]),
    "20": (2, 1, 1, 1, 2, 1, [3, 3, 3], [0, 0, 0], [5, 5, 5], [5, 5, 5],
           [135, 315, 225]),
    "21": (4, 1, 2, 2, 4, 4, [5, 5, 5, 5], [60, 0, 0, 120], [10, 10, 10, 10],
           [5, 5, 5, 5], [75, 135, 135, 225]),
    "22": (4, 1, 2, 2, 3, 3, [5, 5, 5, 5], [0, 0, 0, 120], [5, 5, 10, 10],
           [5, 5, 5, 5], [75, 135, 135, 225]),
    "23": (4, 1, 2, 2, 3, 2, [3, 3, 5, 7], [60, 0, 0, 120], [3, 5, 3, 10],
           [5, 5, 5, 5], [75, 135, 135, 225]),
    "24": (4, 1, 2, 2, 2, 2, [3, 5, 7, 8], [0, 0, 0, 120], [8, 8, 8, 8],
           [3, 3, 3, 3], [75, 135, 135, 225]),
}


def _profile(config: ScenarioConfig):
    def count(kind):
        return sum(1 for f in config.facilities if f.kind is kind)

    return (
        count(FacilityKind.HOUSE),
        count(FacilityKind.HOSPITAL),
        count(FacilityKind.POWER_STATION),
        count(FacilityKind.LAKE),
        sum(1 for a in config.agents if a.kind is AgentKind.PERCEPTION),
        sum(1 for a in config.agents if a.kind is AgentKind.ACTION),
        [r.num_firefronts for r in config.regions],
        [int(r.ignition_delay) for r in config.regions],
        [int(r.fuel) for r in config.regions],
        [int(r.wind_speed) for r in config.regions],
        [int(r.wind_azimuth) for r in config.regions],
    )


def test_catalog_matches_golden_transcription():
    assert set(preset_ids()) == set(GOLDEN_CATALOG)
    for sid, row in GOLDEN_CATALOG.items():
        assert _profile(preset(sid)) == row, f"preset {sid} deviates"


def test_catalog_common_settings():
    for sid in preset_ids():
        config = preset(sid)
        assert config.world.size_units == 1200.0
        assert config.world.duration == 180
        assert config.practice == (sid == "practice")
        assert sum(1 for f in config.facilities
                   if f.kind is FacilityKind.BASE) == 1


def test_all_presets_validate():
    for sid in preset_ids():
        report = validate(preset(sid))
        assert report.ok, f"preset {sid}: {report.codes()}"


def test_preset_unknown_id():
    with pytest.raises(ValueError):
        preset("99")


def test_default_agent_specs():
    p = default_agent_spec(AgentKind.PERCEPTION)
    assert (p.z_min, p.z_max) == (10.0, 100.0)
    assert p.tank_capacity == 0 and p.confidence == 0.0
    a = default_agent_spec(AgentKind.ACTION)
    assert a.z_min == a.z_max == DEFAULTS["action_altitude"]
    assert a.tank_capacity == 10 and a.confidence == 0.9
    h = default_agent_spec(AgentKind.HYBRID)
    assert (h.z_min, h.z_max) == (10.0, 100.0)
    assert h.confidence == 0.8


def test_roundtrip_identity(tmp_path):
    config = preset("7")
    path = tmp_path / "seven.yaml"
    save(config, str(path))
    again = load(str(path))
    assert again == config
    assert dumps(again) == dumps(config)


def test_roundtrip_custom(scenario, tmp_path):
    path = tmp_path / "small.yaml"
    save(scenario, str(path))
    assert load(str(path)) == scenario


def test_mapping_roundtrip(scenario):
    assert from_mapping(to_mapping(scenario)) == scenario


def test_loads_rejects_malformed():
    with pytest.raises(ValueError, match="scenario file"):
        loads(":\nnot yaml: [")
    with pytest.raises(ValueError, match="scenario file"):
        loads("just a string")
    with pytest.raises(ValueError, match="scenario file"):
        loads("name: x\n")  # missing required sections


def test_loads_rejects_unknown_schema():
    text = dumps(small_scenario()).replace("schema_version: 1", "schema_version: 9")
    with pytest.raises(ValueError, match="schema"):
        loads(text)


def test_validate_agent_count_cap():
    team = [default_agent_spec(AgentKind.PERCEPTION)] * 6 \
         + [default_agent_spec(AgentKind.ACTION)] * 4
    config = small_scenario(agents=team)
    assert "team_size" in validate(config).codes()
    assert RANGES["max_agents"] == 9


def test_validate_team_composition():
    only_action = small_scenario(agents=[default_agent_spec(AgentKind.ACTION)] * 2)
    assert "no_perception" in validate(only_action).codes()
    only_perception = small_scenario(
        agents=[default_agent_spec(AgentKind.PERCEPTION)] * 2)
    assert "no_action" in validate(only_perception).codes()
    hybrid_only = small_scenario(agents=[default_agent_spec(AgentKind.HYBRID)])
    assert validate(hybrid_only).ok


def test_validate_parameter_ranges(scenario):
    from dataclasses import replace as dc_replace

    bad_wind = dc_replace(scenario.regions[0], wind_speed=50.0)
    config = small_scenario(regions=[bad_wind])
    assert any("wind" in code for code in validate(config).codes())

    bad_fronts = dc_replace(scenario.regions[0], num_firefronts=31)
    assert not validate(small_scenario(regions=[bad_fronts])).ok

    bad_fuel = dc_replace(scenario.regions[0], fuel=1.0)
    assert not validate(small_scenario(regions=[bad_fuel])).ok

    bad_azimuth = dc_replace(scenario.regions[0], wind_azimuth=360.0)
    assert not validate(small_scenario(regions=[bad_azimuth])).ok


def test_validate_agent_spec_ranges(scenario):
    slow = AgentSpec(AgentKind.PERCEPTION, max_velocity=5.0,
                     tank_capacity=0, confidence=0.0)
    config = small_scenario(agents=[slow, default_agent_spec(AgentKind.ACTION)])
    assert not validate(config).ok

    thirsty = AgentSpec(AgentKind.ACTION, z_min=50.0, z_max=50.0,
                        battery_capacity=100.0)
    config = small_scenario(
        agents=[default_agent_spec(AgentKind.PERCEPTION), thirsty])
    assert not validate(config).ok


def test_validate_perception_carries_no_tank():
    armed = AgentSpec(AgentKind.PERCEPTION, tank_capacity=5, confidence=0.0)
    config = small_scenario(agents=[armed, default_agent_spec(AgentKind.ACTION)])
    report = validate(config)
    assert "tank" in report.codes()
    assert any("perception" in v.message for v in report.violations)


def test_validate_homogeneous_consistency():
    mixed = [
        default_agent_spec(AgentKind.PERCEPTION),
        AgentSpec(AgentKind.PERCEPTION, max_velocity=25.0,
                  tank_capacity=0, confidence=0.0),
        default_agent_spec(AgentKind.ACTION),
    ]
    config = small_scenario(agents=mixed)
    assert "homogeneous" in validate(config).codes()
    relaxed = small_scenario(agents=mixed,
                             homogeneous={"perception": False, "action": True,
                                          "hybrid": True})
    assert validate(relaxed).ok


def test_resolve_scenario(tmp_path, scenario):
    assert resolve_scenario("practice").practice
    assert resolve_scenario("24").name == preset("24").name
    path = tmp_path / "own.yaml"
    save(scenario, str(path))
    assert resolve_scenario(str(path)) == scenario
    # Anything that is not a preset id is treated as a path.
    with pytest.raises(FileNotFoundError):
        resolve_scenario(str(tmp_path / "missing.yaml"))
    with pytest.raises(FileNotFoundError):
        resolve_scenario("not-a-preset-id-and-not-a-file")
