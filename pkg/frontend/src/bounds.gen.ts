// Generated by scripts/gen_ui_constants.py. Do not edit by hand;
// rerun the script after changing the scenario schema.

export const PROTOCOL_VERSION = 1;
export const DEFAULT_PORT = 8431;
export const CELL_UNITS = 50.0;
export const SCHEMA_VERSION = 1;

// Closed [lo, hi] bounds except wind_azimuth, which excludes the
// high end; plural list entries enumerate the only legal choices.
export const RANGES = {
  "altitude": [10, 100],
  "battery": [200, 800],
  "confidence": [0.1, 1.0],
  "durations": [60, 120, 180],
  "facility_max": 5,
  "fire_regions": [1, 5],
  "firefronts": [1, 30],
  "fuel": [2, 15],
  "ignition_delay": [0, 180],
  "max_agents": 9,
  "propagation_weight": [0.0, 1.0],
  "tank": [1, 15],
  "temporal_penalty": [0.0, 2.0],
  "velocity": [10, 30],
  "wind_azimuth": [0, 360],
  "wind_speed": [2, 10],
  "world_sizes": [800, 1000, 1200],
} as const;

export const DEFAULTS = {
  "action_altitude": 50.0,
  "action_confidence": 0.9,
  "battery": 500,
  "duration": 180,
  "firefronts": 10,
  "fuel": 10,
  "hybrid_confidence": 0.8,
  "ignition_delay": 0,
  "propagation_weight": 0.1,
  "tank": 10,
  "temporal_penalty": 1.25,
  "velocity": 20,
  "wind_azimuth": 45,
  "wind_speed": 5,
  "world_size": 1200,
} as const;

// Penalty per firespot inside the footprint, per scored second.
export const PENALTY_COEFFICIENTS = {
  "base": 5.0,
  "hospital": 2.0,
  "house": 1.0,
  "lake": 0.0,
  "power_station": 5.0,
  "road": 0.0,
} as const;

// Map palette, keyed by facility kind plus the two ground states.
export const DISPLAY_COLORS = {
  "base": "#e8c51a",
  "fire": "#d42a1e",
  "grass": "#3f7d3a",
  "hospital": "#f4f4f4",
  "house": "#e07b28",
  "lake": "#7ec8e3",
  "power_station": "#1a2d8a",
  "road": "#8a8a8a",
} as const;

// Placement-cell footprints as [width, height]; the base has one
// entry per orientation.
export const FOOTPRINTS = {
  "base_horizontal": [4, 2],
  "base_vertical": [2, 4],
  "hospital": [2, 2],
  "house": [2, 2],
  "lake": [4, 3],
  "power_station": [2, 2],
  "road": [1, 1],
} as const;

export const AGENT_KINDS = ["perception", "action", "hybrid"] as const;
export const FACILITY_KINDS = ["base", "house", "hospital", "power_station", "lake", "road"] as const;
