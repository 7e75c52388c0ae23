import { describe, expect, it } from "vitest";

import type { AgentSnapshot, StateFrame } from "../src/protocol.js";
import { acceptFrame, canNavigate, initialState, navigate } from "../src/state.js";

function agent(index: number, goals: [number, number][]): AgentSnapshot {
  return {
    index, kind: "perception", kind_index: 0,
    x: 25, y: 25, z: 55, vx: 0, vy: 0, vz: 0,
    battery: 500, battery_at_chain_end: 500, tank: 0,
    distance: 0, waiting: 0,
    deployed: true, retreating: false, patrolling: false,
    goal_index: 0, goals, fov_halfwidth: 41.25,
  };
}

function frame(seq: number, selected: number,
               agents: AgentSnapshot[]): StateFrame {
  return {
    type: "state", seq, dropped_commands: 0,
    tick: seq * 10, clock: seq, remaining: 180 - seq,
    terminated: false, selected,
    world: { size: 1200, duration: 180, cell: 50 },
    agents, sensed: [], facilities: [], regions: [],
    counts: { spawned: 0, active: 0, sensed: 0, ever_sensed: 0,
              pruned: 0, burnt: 0 },
    scores: { total_negative: 0, expected_negative: 120, nrr: 0,
              overall: 100, perception: 100, action: 100, facility: 100,
              final: 300, verbal: "Excellent" },
  };
}

describe("page graph", () => {
  it("routes the main flow", () => {
    expect(canNavigate("welcome", "scenario_select")).toBe(true);
    expect(canNavigate("scenario_select", "preview")).toBe(true);
    expect(canNavigate("preview", "playing")).toBe(true);
    expect(canNavigate("playing", "score")).toBe(true);
    expect(canNavigate("score", "replay")).toBe(true);
  });

  it("refuses to abandon live play", () => {
    expect(canNavigate("playing", "welcome")).toBe(false);
    expect(canNavigate("playing", "scenario_select")).toBe(false);
  });

  it("mutates the state only on legal edges", () => {
    const state = initialState();
    expect(navigate(state, "playing")).toBe(false);
    expect(state.page).toBe("welcome");
    expect(navigate(state, "tutorial")).toBe(true);
    expect(state.page).toBe("tutorial");
  });
});

describe("acceptFrame", () => {
  it("adopts the server's selection", () => {
    const state = initialState();
    acceptFrame(state, frame(1, 3, [agent(1, []), agent(2, []), agent(3, [])]));
    expect(state.selected).toBe(3);
  });

  it("keeps a pending goal until a frame confirms it", () => {
    const state = initialState();
    acceptFrame(state, frame(1, 1, [agent(1, [])]));
    state.pendingGoals.push({ agent: 1, x: 400, y: 300, patrol: false,
                              sentSeq: 1 });

    acceptFrame(state, frame(2, 1, [agent(1, [])]));
    expect(state.pendingGoals).toHaveLength(1);

    acceptFrame(state, frame(3, 1, [agent(1, [[400, 300]])]));
    expect(state.pendingGoals).toHaveLength(0);
  });

  it("drops an echo the server never honored", () => {
    const state = initialState();
    acceptFrame(state, frame(1, 1, [agent(1, [])]));
    state.pendingGoals.push({ agent: 1, x: 400, y: 300, patrol: false,
                              sentSeq: 1 });
    acceptFrame(state, frame(60, 1, [agent(1, [])]));
    expect(state.pendingGoals).toHaveLength(0);
  });
});
