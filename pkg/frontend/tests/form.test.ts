import { describe, expect, it } from "vitest";

import { DEFAULTS, RANGES, SCHEMA_VERSION } from "../src/bounds.gen.js";
import { AGENT_FIELDS, REGION_FIELDS, SCORING_FIELDS, WORLD_FIELDS,
         draftToConfig, resolveField, validateDraft,
         type ScenarioDraft } from "../src/form.js";

/** A draft that passes every check, for mutating in individual tests. */
function goodDraft(): ScenarioDraft {
  return {
    name: "test-run",
    seed: 7,
    world_size: 1200,
    duration: 120,
    facilities: [
      { kind: "base", cell: "A-01", orientation: "horizontal" },
      { kind: "house", cell: "F-06" },
    ],
    regions: [{ cell: "C-03", firefronts: 5, delay: 0, fuel: 10,
                wind_speed: 5, wind_azimuth: 90 }],
    agents: [
      { kind: "perception", battery: 500, velocity: 20 },
      { kind: "action", battery: 500, velocity: 20, tank: 10,
        confidence: 0.9 },
    ],
  };
}

describe("field bounds", () => {
  it("come straight from the generated constants", () => {
    expect(REGION_FIELDS.firefronts.bounds).toEqual(RANGES.firefronts);
    expect(REGION_FIELDS.delay.bounds).toEqual(RANGES.ignition_delay);
    expect(REGION_FIELDS.fuel.bounds).toEqual(RANGES.fuel);
    expect(REGION_FIELDS.wind_speed.bounds).toEqual(RANGES.wind_speed);
    expect(REGION_FIELDS.wind_azimuth.bounds).toEqual(RANGES.wind_azimuth);
    expect(AGENT_FIELDS.battery.bounds).toEqual(RANGES.battery);
    expect(AGENT_FIELDS.velocity.bounds).toEqual(RANGES.velocity);
    expect(AGENT_FIELDS.tank.bounds).toEqual(RANGES.tank);
    expect(AGENT_FIELDS.confidence.bounds).toEqual(RANGES.confidence);
    expect(AGENT_FIELDS.z_min.bounds).toEqual(RANGES.altitude);
    expect(AGENT_FIELDS.z_max.bounds).toEqual(RANGES.altitude);
    expect(WORLD_FIELDS.world_size.choices).toEqual(RANGES.world_sizes);
    expect(WORLD_FIELDS.duration.choices).toEqual(RANGES.durations);
    expect(SCORING_FIELDS.temporal_penalty.bounds)
      .toEqual(RANGES.temporal_penalty);
    expect(SCORING_FIELDS.propagation_weight.bounds)
      .toEqual(RANGES.propagation_weight);
  });

  it("agree with the session server's published limits", () => {
    expect(RANGES.battery).toEqual([200, 800]);
    expect(RANGES.velocity).toEqual([10, 30]);
    expect(RANGES.wind_speed).toEqual([2, 10]);
    expect(RANGES.wind_azimuth).toEqual([0, 360]);
    expect(RANGES.world_sizes).toEqual([800, 1000, 1200]);
    expect(RANGES.durations).toEqual([60, 120, 180]);
    expect(RANGES.max_agents).toBe(9);
    expect(RANGES.altitude).toEqual([10, 100]);
  });
});

describe("resolveField", () => {
  it("fills blanks with the field default", () => {
    const { value, violation } =
      resolveField(REGION_FIELDS.wind_speed, "");
    expect(violation).toBeNull();
    expect(value).toBe(DEFAULTS.wind_speed);
  });

  it("requires fields without a default", () => {
    const { violation } = resolveField(AGENT_FIELDS.confidence, "");
    expect(violation).toContain("required");
  });

  it("rejects values past either bound", () => {
    expect(resolveField(REGION_FIELDS.wind_speed, 50).violation)
      .toContain("at most 10");
    expect(resolveField(AGENT_FIELDS.battery, 199).violation)
      .toContain("at least 200");
    expect(resolveField(AGENT_FIELDS.battery, 801).violation)
      .toContain("at most 800");
    expect(resolveField(AGENT_FIELDS.battery, 200).violation).toBeNull();
    expect(resolveField(AGENT_FIELDS.battery, 800).violation).toBeNull();
  });

  it("treats the azimuth range as half open", () => {
    expect(resolveField(REGION_FIELDS.wind_azimuth, 360).violation)
      .toContain("below 360");
    expect(resolveField(REGION_FIELDS.wind_azimuth, 359.9).violation)
      .toBeNull();
    expect(resolveField(REGION_FIELDS.wind_azimuth, 0).violation).toBeNull();
  });

  it("rejects fractional counts and off-list choices", () => {
    expect(resolveField(REGION_FIELDS.firefronts, 2.5).violation)
      .toContain("whole number");
    expect(resolveField(WORLD_FIELDS.world_size, 900).violation)
      .toContain("one of 800, 1000, 1200");
  });
});

describe("validateDraft", () => {
  it("accepts a complete sensible draft", () => {
    expect(validateDraft(goodDraft())).toEqual([]);
  });

  it("caps the team size", () => {
    const draft = goodDraft();
    while (draft.agents.length < 10) {
      draft.agents.push({ kind: "hybrid", battery: 500, velocity: 20,
                          tank: 10, confidence: 0.8 });
    }
    const messages = validateDraft(draft).map((v) => v.message);
    expect(messages).toContain("at most 9 agents in a team");
  });

  it("rejects a tank on a sensing craft", () => {
    const draft = goodDraft();
    draft.agents[0].tank = 5;
    const violations = validateDraft(draft);
    expect(violations).toEqual([
      { path: "agents[0].tank", message: "sensing craft carry no tank" },
    ]);
  });

  it("requires both a sensing and a suppressing role", () => {
    const blind = goodDraft();
    blind.agents = [{ kind: "action", battery: 500, velocity: 20,
                      tank: 10, confidence: 0.9 }];
    expect(validateDraft(blind).map((v) => v.message))
      .toContain("the team cannot sense anything");

    const toothless = goodDraft();
    toothless.agents = [{ kind: "perception", battery: 500, velocity: 20 }];
    expect(validateDraft(toothless).map((v) => v.message))
      .toContain("the team cannot fight fire");
  });

  it("requires exactly one base with an orientation", () => {
    const noBase = goodDraft();
    noBase.facilities = noBase.facilities.filter((f) => f.kind !== "base");
    expect(validateDraft(noBase).map((v) => v.message))
      .toContain("exactly one base");

    const bare = goodDraft();
    delete bare.facilities[0].orientation;
    expect(validateDraft(bare).map((v) => v.message))
      .toContain("the base needs an orientation");
  });

  it("flags an inverted altitude band", () => {
    const draft = goodDraft();
    draft.agents[0].z_min = 90;
    draft.agents[0].z_max = 20;
    expect(validateDraft(draft).map((v) => v.message))
      .toContain("min altitude above max altitude");
  });

  it("names the offending field", () => {
    const draft = goodDraft();
    draft.regions[0].wind_speed = 50;
    const violations = validateDraft(draft);
    expect(violations).toHaveLength(1);
    expect(violations[0].path).toBe("regions[0].wind_speed");
  });
});

describe("draftToConfig", () => {
  it("fills every blank with kind-aware defaults", () => {
    const draft: ScenarioDraft = {
      facilities: [
        { kind: "base", cell: "A-01", orientation: "vertical" },
        { kind: "house", cell: "F-06" },
      ],
      regions: [{ cell: "C-03" }],
      agents: [{ kind: "perception" }, { kind: "action" }],
    };
    expect(draftToConfig(draft)).toEqual({
      schema_version: SCHEMA_VERSION,
      name: "open-world",
      seed: 0,
      world: { size: DEFAULTS.world_size, duration: DEFAULTS.duration },
      facilities: [
        { kind: "base", cell: "A-01", orientation: "vertical" },
        { kind: "house", cell: "F-06" },
      ],
      regions: [{
        cell: "C-03",
        firefronts: DEFAULTS.firefronts,
        delay: DEFAULTS.ignition_delay,
        fuel: DEFAULTS.fuel,
        wind_speed: DEFAULTS.wind_speed,
        wind_azimuth: DEFAULTS.wind_azimuth,
      }],
      agents: [
        { kind: "perception", battery: DEFAULTS.battery,
          velocity: DEFAULTS.velocity, tank: 0, confidence: 0,
          z_min: RANGES.altitude[0], z_max: RANGES.altitude[1] },
        { kind: "action", battery: DEFAULTS.battery,
          velocity: DEFAULTS.velocity, tank: DEFAULTS.tank,
          confidence: DEFAULTS.action_confidence,
          z_min: DEFAULTS.action_altitude, z_max: DEFAULTS.action_altitude },
      ],
    });
  });

  it("only writes a scoring block when something differs", () => {
    expect(draftToConfig(goodDraft())).not.toHaveProperty("scoring");

    const tweaked = goodDraft();
    tweaked.temporal_penalty = 2.0;
    expect(draftToConfig(tweaked)).toMatchObject({
      scoring: { temporal_penalty: 2.0,
                 propagation_weight: DEFAULTS.propagation_weight,
                 penalty_overrides: {} },
    });
  });

  it("pins suppression craft to their fixed altitude", () => {
    const draft = goodDraft();
    draft.agents[1].z_min = 10;
    draft.agents[1].z_max = 90;
    const config = draftToConfig(draft) as {
      agents: { z_min: number; z_max: number }[];
    };
    expect(config.agents[1].z_min).toBe(DEFAULTS.action_altitude);
    expect(config.agents[1].z_max).toBe(DEFAULTS.action_altitude);
  });
});
