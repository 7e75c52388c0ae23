/** Build a drawable scene from a bare scenario mapping.
 *
 * The designer preview runs before any simulation exists, so facility
 * footprints and agent start positions are reconstructed here from the
 * same placement rules the server applies: footprints by kind (base by
 * orientation), the team parked at the base anchor.
 */

import { CELL_UNITS, FOOTPRINTS } from "./bounds.gen.js";
import { cellToAnchor } from "./geometry.js";
import type { AgentSnapshot, Scene } from "./protocol.js";

interface ConfigFacility {
  kind: string;
  cell: string;
  orientation?: string | null;
}

interface ConfigRegion {
  cell: string;
  firefronts: number;
  delay: number;
}

interface ConfigAgent {
  kind: AgentSnapshot["kind"];
  z_min: number;
}

export interface ScenarioMapping {
  name: string;
  world: { size: number; duration: number };
  facilities: ConfigFacility[];
  regions: ConfigRegion[];
  agents: ConfigAgent[];
}

function facilityFootprint(fac: ConfigFacility): [number, number] {
  const table = FOOTPRINTS as Record<string, readonly number[]>;
  const key = fac.kind === "base" ? `base_${fac.orientation}` : fac.kind;
  const footprint = table[key] ?? [1, 1];
  return [footprint[0], footprint[1]];
}

export function previewScene(config: ScenarioMapping): Scene {
  const base = config.facilities.find((f) => f.kind === "base");
  const anchor = base ? cellToAnchor(base.cell) : [0, 0];
  const baseXY: [number, number] = [anchor[0] * CELL_UNITS,
                                    anchor[1] * CELL_UNITS];
  const agents = config.agents.map((a, i): AgentSnapshot => ({
    index: i + 1,
    kind: a.kind,
    kind_index: 0,
    x: baseXY[0], y: baseXY[1], z: a.z_min,
    vx: 0, vy: 0, vz: 0,
    battery: 0, battery_at_chain_end: 0,
    tank: 0, distance: 0, waiting: 0,
    deployed: false, retreating: false, patrolling: false,
    goal_index: 0, goals: [],
    fov_halfwidth: 0,
  }));
  return {
    tick: 0,
    clock: 0,
    remaining: config.world.duration,
    terminated: false,
    selected: 0,
    world: { size: config.world.size, duration: config.world.duration,
             cell: CELL_UNITS },
    agents,
    sensed: [],
    facilities: config.facilities.map((f) => ({
      kind: f.kind,
      cell: f.cell,
      anchor: cellToAnchor(f.cell),
      footprint: facilityFootprint(f),
      orientation: f.orientation ?? null,
      on_fire: 0,
      ever_on_fire: false,
    })),
    regions: config.regions.map((r) => ({
      cell: r.cell,
      firefronts: r.firefronts,
      delay: r.delay,
      ignited: false,
    })),
    counts: { spawned: 0, active: 0, sensed: 0, ever_sensed: 0,
              pruned: 0, burnt: 0 },
    scores: { total_negative: 0, expected_negative: 0, nrr: 0, overall: 100,
              perception: 100, action: 100, facility: 100, final: 300,
              verbal: "" },
  };
}
