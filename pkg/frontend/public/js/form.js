/** Scenario designer model: field bounds, defaults, and draft assembly.
 *
 * Client-side checks mirror the server's numeric rules so mistakes are
 * flagged inline before submission; layout rules (cell collisions, base
 * placement) stay server-side and come back in the load reply. Every bound
 * here is read from the generated constants module, never restated.
 */
import { DEFAULTS, RANGES, SCHEMA_VERSION } from "./bounds.gen.js";
// Per-region fire parameters.
export const REGION_FIELDS = {
    firefronts: { label: "firefronts", bounds: RANGES.firefronts,
        integer: true, fallback: DEFAULTS.firefronts },
    delay: { label: "ignition delay (s)", bounds: RANGES.ignition_delay,
        fallback: DEFAULTS.ignition_delay },
    fuel: { label: "fuel", bounds: RANGES.fuel, fallback: DEFAULTS.fuel },
    wind_speed: { label: "wind speed", bounds: RANGES.wind_speed,
        fallback: DEFAULTS.wind_speed },
    wind_azimuth: { label: "wind azimuth (deg)", bounds: RANGES.wind_azimuth,
        halfOpenHigh: true, fallback: DEFAULTS.wind_azimuth },
};
// Per-agent parameters; altitude fields apply to the kinds that may climb.
export const AGENT_FIELDS = {
    battery: { label: "battery", bounds: RANGES.battery,
        fallback: DEFAULTS.battery },
    velocity: { label: "max velocity", bounds: RANGES.velocity,
        fallback: DEFAULTS.velocity },
    tank: { label: "tank", bounds: RANGES.tank, integer: true,
        fallback: DEFAULTS.tank },
    confidence: { label: "drop confidence", bounds: RANGES.confidence,
        fallback: null },
    z_min: { label: "min altitude", bounds: RANGES.altitude,
        fallback: RANGES.altitude[0] },
    z_max: { label: "max altitude", bounds: RANGES.altitude,
        fallback: RANGES.altitude[1] },
};
export const WORLD_FIELDS = {
    world_size: { label: "world size", choices: RANGES.world_sizes,
        fallback: DEFAULTS.world_size },
    duration: { label: "duration (s)", choices: RANGES.durations,
        fallback: DEFAULTS.duration },
};
export const SCORING_FIELDS = {
    temporal_penalty: { label: "facility penalty factor",
        bounds: RANGES.temporal_penalty,
        fallback: DEFAULTS.temporal_penalty },
    propagation_weight: { label: "active fire weight",
        bounds: RANGES.propagation_weight,
        fallback: DEFAULTS.propagation_weight },
};
export function resolveField(field, raw) {
    if (raw === "" || raw === null || raw === undefined) {
        if (field.fallback === null) {
            return { value: NaN, violation: `${field.label} is required` };
        }
        return { value: field.fallback, violation: null };
    }
    const value = Number(raw);
    if (!Number.isFinite(value)) {
        return { value: NaN, violation: `${field.label} must be a number` };
    }
    if (field.integer && !Number.isInteger(value)) {
        return { value, violation: `${field.label} must be a whole number` };
    }
    if (field.choices && !field.choices.includes(value)) {
        return { value, violation: `${field.label} must be one of ${field.choices.join(", ")}` };
    }
    if (field.bounds) {
        const [lo, hi] = field.bounds;
        const tooHigh = field.halfOpenHigh ? value >= hi : value > hi;
        if (value < lo || tooHigh) {
            const top = field.halfOpenHigh ? `below ${hi}` : `at most ${hi}`;
            return { value, violation: `${field.label} must be at least ${lo} and ${top}` };
        }
    }
    return { value, violation: null };
}
function checkFields(out, prefix, fields, values) {
    for (const [name, field] of Object.entries(fields)) {
        const { violation } = resolveField(field, values[name]);
        if (violation)
            out.push({ path: `${prefix}${name}`, message: violation });
    }
}
/** Kind-aware agent defaults: what a blank field means for this craft. */
function agentDefaults(kind) {
    if (kind === "perception") {
        return { tank: 0, confidence: 0,
            z: [RANGES.altitude[0], RANGES.altitude[1]] };
    }
    if (kind === "action") {
        return { tank: DEFAULTS.tank, confidence: DEFAULTS.action_confidence,
            z: [DEFAULTS.action_altitude, DEFAULTS.action_altitude] };
    }
    return { tank: DEFAULTS.tank, confidence: DEFAULTS.hybrid_confidence,
        z: [RANGES.altitude[0], RANGES.altitude[1]] };
}
export function validateDraft(draft) {
    const out = [];
    checkFields(out, "", WORLD_FIELDS, { world_size: draft.world_size, duration: draft.duration });
    checkFields(out, "", SCORING_FIELDS, { temporal_penalty: draft.temporal_penalty,
        propagation_weight: draft.propagation_weight });
    const [rlo, rhi] = RANGES.fire_regions;
    if (draft.regions.length < rlo || draft.regions.length > rhi) {
        out.push({ path: "regions",
            message: `between ${rlo} and ${rhi} fire regions` });
    }
    draft.regions.forEach((region, i) => {
        checkFields(out, `regions[${i}].`, REGION_FIELDS, region);
    });
    const bases = draft.facilities.filter((f) => f.kind === "base");
    if (bases.length !== 1) {
        out.push({ path: "facilities", message: "exactly one base" });
    }
    for (const base of bases) {
        if (base.orientation !== "horizontal" && base.orientation !== "vertical") {
            out.push({ path: "facilities",
                message: "the base needs an orientation" });
        }
    }
    const perKind = new Map();
    for (const f of draft.facilities) {
        if (f.kind !== "base") {
            perKind.set(f.kind, (perKind.get(f.kind) ?? 0) + 1);
        }
    }
    for (const [kind, count] of perKind) {
        if (count > RANGES.facility_max) {
            out.push({ path: "facilities",
                message: `at most ${RANGES.facility_max} of kind ${kind}` });
        }
    }
    if (draft.agents.length > RANGES.max_agents) {
        out.push({ path: "agents",
            message: `at most ${RANGES.max_agents} agents in a team` });
    }
    const canSense = draft.agents.some((a) => a.kind === "perception" || a.kind === "hybrid");
    const canPrune = draft.agents.some((a) => a.kind === "action" || a.kind === "hybrid");
    if (!canSense) {
        out.push({ path: "agents", message: "the team cannot sense anything" });
    }
    if (!canPrune) {
        out.push({ path: "agents", message: "the team cannot fight fire" });
    }
    draft.agents.forEach((agent, i) => {
        const prefix = `agents[${i}].`;
        checkFields(out, prefix, { battery: AGENT_FIELDS.battery,
            velocity: AGENT_FIELDS.velocity }, agent);
        if (agent.kind === "perception") {
            // Sensing craft carry no water; a filled-in tank is a mistake.
            if (agent.tank !== undefined && agent.tank !== "" &&
                agent.tank !== null && Number(agent.tank) !== 0) {
                out.push({ path: `${prefix}tank`,
                    message: "sensing craft carry no tank" });
            }
        }
        else {
            checkFields(out, prefix, { tank: AGENT_FIELDS.tank,
                confidence: { ...AGENT_FIELDS.confidence,
                    fallback: agentDefaults(agent.kind).confidence } }, agent);
        }
        if (agent.kind !== "action") {
            checkFields(out, prefix, { z_min: AGENT_FIELDS.z_min, z_max: AGENT_FIELDS.z_max }, agent);
            const zMin = resolveField(AGENT_FIELDS.z_min, agent.z_min).value;
            const zMax = resolveField(AGENT_FIELDS.z_max, agent.z_max).value;
            if (Number.isFinite(zMin) && Number.isFinite(zMax) && zMin > zMax) {
                out.push({ path: `${prefix}z_min`,
                    message: "min altitude above max altitude" });
            }
        }
    });
    return out;
}
/** Assemble the load_scenario config mapping. Call after validateDraft. */
export function draftToConfig(draft) {
    const num = (field, raw) => resolveField(field, raw).value;
    const regions = draft.regions.map((r) => ({
        cell: r.cell,
        firefronts: num(REGION_FIELDS.firefronts, r.firefronts),
        delay: num(REGION_FIELDS.delay, r.delay),
        fuel: num(REGION_FIELDS.fuel, r.fuel),
        wind_speed: num(REGION_FIELDS.wind_speed, r.wind_speed),
        wind_azimuth: num(REGION_FIELDS.wind_azimuth, r.wind_azimuth),
    }));
    const agents = draft.agents.map((a) => {
        const defaults = agentDefaults(a.kind);
        const fixed = a.kind === "action";
        return {
            kind: a.kind,
            battery: num(AGENT_FIELDS.battery, a.battery),
            velocity: num(AGENT_FIELDS.velocity, a.velocity),
            tank: a.kind === "perception" ? 0
                : num({ ...AGENT_FIELDS.tank, fallback: defaults.tank }, a.tank),
            confidence: a.kind === "perception" ? 0
                : num({ ...AGENT_FIELDS.confidence, fallback: defaults.confidence }, a.confidence),
            z_min: fixed ? defaults.z[0]
                : num({ ...AGENT_FIELDS.z_min, fallback: defaults.z[0] }, a.z_min),
            z_max: fixed ? defaults.z[1]
                : num({ ...AGENT_FIELDS.z_max, fallback: defaults.z[1] }, a.z_max),
        };
    });
    const facilities = draft.facilities.map((f) => f.kind === "base"
        ? { kind: f.kind, cell: f.cell, orientation: f.orientation }
        : { kind: f.kind, cell: f.cell });
    const config = {
        schema_version: SCHEMA_VERSION,
        name: draft.name || "open-world",
        seed: draft.seed === "" || draft.seed == null ? 0 : Number(draft.seed),
        world: {
            size: num(WORLD_FIELDS.world_size, draft.world_size),
            duration: num(WORLD_FIELDS.duration, draft.duration),
        },
        facilities,
        regions,
        agents,
    };
    const tp = num(SCORING_FIELDS.temporal_penalty, draft.temporal_penalty);
    const pw = num(SCORING_FIELDS.propagation_weight, draft.propagation_weight);
    if (tp !== DEFAULTS.temporal_penalty || pw !== DEFAULTS.propagation_weight) {
        config.scoring = { temporal_penalty: tp, propagation_weight: pw,
            penalty_overrides: {} };
    }
    return config;
}
