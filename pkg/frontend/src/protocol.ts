/** Session protocol types, mirroring docs/protocol.md. */

export type CommandBody =
  | { action: "select"; agent: number }
  | { action: "goal"; x: number; y: number; patrol: boolean; agent: number }
  | { action: "altitude"; direction: "up" | "down"; agent: number };

export type ClientMessage =
  | { type: "hello" }
  | { type: "list_presets" }
  | { type: "load_scenario"; preset?: string; config?: unknown;
      seed?: number; ticks_per_second?: number }
  | { type: "start" }
  | { type: "resume" }
  | { type: "pause" }
  | { type: "command"; command: CommandBody }
  | { type: "save_playback"; name?: string }
  | { type: "export_frames"; name?: string; every?: number }
  | { type: "quit" };

export interface PresetRow {
  id: string;
  practice: boolean;
  regions: number;
  firefronts: number;
  agents: number;
  facilities: number;
  duration: number;
}

export interface AgentSnapshot {
  index: number;
  kind: "perception" | "action" | "hybrid";
  kind_index: number;
  x: number; y: number; z: number;
  vx: number; vy: number; vz: number;
  battery: number;
  battery_at_chain_end: number;
  tank: number;
  distance: number;
  waiting: number;
  deployed: boolean;
  retreating: boolean;
  patrolling: boolean;
  goal_index: number;
  goals: [number, number][];
  fov_halfwidth: number;
}

export interface SensedSpot {
  spot_id: number;
  x: number; y: number;
  intensity: number;
  vx: number; vy: number;
  seen_tick: number;
}

export interface FacilitySnapshot {
  kind: string;
  cell: string;
  anchor: [number, number];
  footprint: [number, number];
  orientation: string | null;
  on_fire: number;
  ever_on_fire: boolean;
}

export interface RegionSnapshot {
  cell: string;
  firefronts: number;
  delay: number;
  ignited: boolean;
}

export interface Scores {
  total_negative: number;
  expected_negative: number;
  nrr: number;
  overall: number;
  perception: number;
  action: number;
  facility: number;
  final: number;
  verbal: string;
}

/** One scene: a state frame without its envelope, or an exported frame file. */
export interface Scene {
  tick: number;
  clock: number;
  remaining: number;
  terminated: boolean;
  selected: number;
  world: { size: number; duration: number; cell: number };
  agents: AgentSnapshot[];
  sensed: SensedSpot[];
  facilities: FacilitySnapshot[];
  regions: RegionSnapshot[];
  counts: { spawned: number; active: number; sensed: number;
            ever_sensed: number; pruned: number; burnt: number };
  scores: Scores;
  subframe?: number;
}

export interface StateFrame extends Scene {
  type: "state";
  seq: number;
  dropped_commands: number;
}

export interface EpisodeSummary {
  scenario: string;
  seed: number;
  ticks: number;
  clock: number;
  terminated_early: boolean;
  spawned: number;
  active: number;
  sensed: number;
  ever_sensed: number;
  pruned: number;
  burnt: number;
  total_negative: number;
  expected_negative: number;
  nrr: number;
  overall: number;
  perception: number;
  action: number;
  facility: number;
  final: number;
  verbal: string;
  reward_total: number;
  sensed_by_agent: Record<string, number>;
  pruned_by_agent: Record<string, number>;
}

export type ServerMessage =
  | { type: "welcome"; protocol: number; presets: PresetRow[] }
  | { type: "presets"; presets: PresetRow[] }
  | { type: "scenario_loaded"; config: Record<string, unknown>;
      seed: number; practice: boolean }
  | { type: "running"; tick: number }
  | { type: "paused"; tick: number }
  | { type: "queued"; tick: number }
  | { type: "saved"; path: string; bytes: number }
  | { type: "frames_exported"; dir: string; count: number }
  | { type: "finished"; summary: EpisodeSummary | null }
  | { type: "bye" }
  | { type: "error"; code: string; message: string }
  | StateFrame;

export interface FrameManifest {
  frames: string[];
  every_n_ticks: number;
  interpolate: number;
  ticks: number;
  scenario: string;
  seed: number;
  summary: EpisodeSummary;
}
