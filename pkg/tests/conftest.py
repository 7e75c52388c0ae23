import pytest

from firecommander.agents import AgentKind
from firecommander.scenarios import (RewardParams, ScenarioConfig,
                                     default_agent_spec)
from firecommander.scoring import ScoringParams
from firecommander.fire import FireModelParams
from firecommander.world import Facility, FacilityKind, FireRegion, GridWorld


def small_scenario(**overrides) -> ScenarioConfig:
    """An 800-unit, 60-second world that runs fast in tests."""
    fields = dict(
        name="small",
        world=GridWorld.from_units(800, 60),
        facilities=[
            Facility(FacilityKind.BASE, (0, 6), "vertical"),
            Facility(FacilityKind.HOUSE, (4, 4)),
        ],
        regions=[FireRegion(cell=(8, 8), num_firefronts=2, ignition_delay=0.0,
                            fuel=5.0, wind_speed=5.0, wind_azimuth=90.0)],
        agents=[default_agent_spec(AgentKind.PERCEPTION),
                default_agent_spec(AgentKind.ACTION)],
        fire=FireModelParams(),
        scoring=ScoringParams(),
        rewards=RewardParams(),
        seed=3,
    )
    fields.update(overrides)
    return ScenarioConfig(**fields)


@pytest.fixture
def scenario() -> ScenarioConfig:
    return small_scenario()
