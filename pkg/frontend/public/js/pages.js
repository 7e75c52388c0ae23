/** DOM builders for the dynamic parts of each page. */
import { AGENT_KINDS, FACILITY_KINDS, RANGES } from "./bounds.gen.js";
function esc(text) {
    return text.replace(/[&<>"]/g, (ch) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" }[ch]));
}
export function fillPresetTable(tbody, presets, onPick) {
    tbody.textContent = "";
    for (const row of presets) {
        const tr = document.createElement("tr");
        const name = row.practice ? `${row.id} (practice)` : row.id;
        tr.innerHTML = `<td>${esc(name)}</td><td>${row.regions}</td>` +
            `<td>${row.firefronts}</td><td>${row.agents}</td>` +
            `<td>${row.facilities}</td><td>${row.duration}s</td>` +
            `<td><button type="button">load</button></td>`;
        tr.addEventListener("click", () => onPick(row.id));
        tbody.appendChild(tr);
    }
}
// -- designer rows -----------------------------------------------------------
function numberInput(name, placeholder) {
    return `<label>${name} <input name="${name}" type="number" step="any"
    placeholder="${placeholder}"></label>`;
}
export function addRegionRow(container) {
    const row = document.createElement("div");
    row.className = "form-row region-row";
    row.innerHTML =
        `<label>cell <input name="cell" placeholder="K-11" size="5"></label>` +
            numberInput("firefronts", "default") +
            numberInput("delay", "0") +
            numberInput("fuel", "default") +
            numberInput("wind_speed", "default") +
            numberInput("wind_azimuth", "default") +
            `<button type="button" class="remove linkish">remove</button>`;
    wireRemove(row);
    container.appendChild(row);
}
export function addFacilityRow(container, kind) {
    const row = document.createElement("div");
    row.className = "form-row facility-row";
    const kinds = FACILITY_KINDS.map((k) => `<option ${k === kind ? "selected" : ""}>${k}</option>`).join("");
    row.innerHTML =
        `<label>kind <select name="kind">${kinds}</select></label>` +
            `<label>cell <input name="cell" placeholder="E-05" size="5"></label>` +
            `<label>orientation <select name="orientation">
       <option value="">-</option><option>vertical</option>
       <option>horizontal</option></select></label>` +
            `<button type="button" class="remove linkish">remove</button>`;
    wireRemove(row);
    container.appendChild(row);
}
export function addAgentRow(container, kind) {
    const row = document.createElement("div");
    row.className = "form-row agent-row";
    const kinds = AGENT_KINDS.map((k) => `<option ${k === kind ? "selected" : ""}>${k}</option>`).join("");
    row.innerHTML =
        `<label>kind <select name="kind">${kinds}</select></label>` +
            numberInput("battery", "default") +
            numberInput("velocity", "default") +
            numberInput("tank", "default") +
            numberInput("confidence", "default") +
            numberInput("z_min", "default") +
            numberInput("z_max", "default") +
            `<button type="button" class="remove linkish">remove</button>`;
    wireRemove(row);
    container.appendChild(row);
}
function wireRemove(row) {
    row.querySelector("button.remove")
        .addEventListener("click", () => row.remove());
}
function readNumber(row, name) {
    const input = row.querySelector(`[name=${name}]`);
    if (!input || input.value.trim() === "")
        return "";
    return Number(input.value);
}
function readText(row, name) {
    const el = row.querySelector(`[name=${name}]`);
    return el ? el.value.trim() : "";
}
export function readDraft(form) {
    const regions = [];
    for (const row of form.querySelectorAll(".region-row")) {
        regions.push({
            cell: readText(row, "cell").toUpperCase(),
            firefronts: readNumber(row, "firefronts"),
            delay: readNumber(row, "delay"),
            fuel: readNumber(row, "fuel"),
            wind_speed: readNumber(row, "wind_speed"),
            wind_azimuth: readNumber(row, "wind_azimuth"),
        });
    }
    const facilities = [];
    for (const row of form.querySelectorAll(".facility-row")) {
        const orientation = readText(row, "orientation");
        facilities.push({
            kind: readText(row, "kind"),
            cell: readText(row, "cell").toUpperCase(),
            ...(orientation ? { orientation: orientation } : {}),
        });
    }
    const agents = [];
    for (const row of form.querySelectorAll(".agent-row")) {
        agents.push({
            kind: readText(row, "kind"),
            battery: readNumber(row, "battery"),
            velocity: readNumber(row, "velocity"),
            tank: readNumber(row, "tank"),
            confidence: readNumber(row, "confidence"),
            z_min: readNumber(row, "z_min"),
            z_max: readNumber(row, "z_max"),
        });
    }
    return {
        name: readText(form, "name"),
        seed: readNumber(form, "seed"),
        world_size: readNumber(form, "world_size"),
        duration: readNumber(form, "duration"),
        facilities, regions, agents,
        temporal_penalty: readNumber(form, "temporal_penalty"),
        propagation_weight: readNumber(form, "propagation_weight"),
    };
}
export function fillChoiceSelects(form) {
    const size = form.querySelector("[name=world_size]");
    size.innerHTML = RANGES.world_sizes.map((v) => `<option ${v === 1200 ? "selected" : ""}>${v}</option>`).join("");
    const dur = form.querySelector("[name=duration]");
    dur.innerHTML = RANGES.durations.map((v) => `<option ${v === 180 ? "selected" : ""}>${v}</option>`).join("");
}
export function showViolations(list, violations, serverText) {
    list.textContent = "";
    for (const v of violations) {
        const li = document.createElement("li");
        li.textContent = `${v.path}: ${v.message}`;
        list.appendChild(li);
    }
    if (serverText) {
        const li = document.createElement("li");
        li.textContent = serverText;
        list.appendChild(li);
    }
}
// -- playing info panel ------------------------------------------------------
export function infoPanelHtml(frame, selected) {
    const rows = frame.agents.map((a) => {
        const flags = [a.retreating ? "home" : "",
            a.patrolling ? "patrol" : ""].filter(Boolean).join(" ");
        return `<tr class="${a.index === selected ? "selected" : ""}">` +
            `<td>${a.index}</td><td>${a.kind.slice(0, 4)}</td>` +
            `<td>${a.z.toFixed(0)}</td>` +
            `<td>${a.battery.toFixed(0)}</td>` +
            `<td>${a.battery_at_chain_end.toFixed(0)}</td>` +
            `<td>${a.tank.toFixed(0)}</td><td>${flags}</td></tr>`;
    }).join("");
    const s = frame.scores;
    const c = frame.counts;
    return `
    <table>
      <tr><th>#</th><th>kind</th><th>alt</th><th>battery</th>
          <th>at goal</th><th>tank</th><th></th></tr>
      ${rows}
    </table>
    <hr>
    <table>
      <tr><th>clock</th><td>${frame.clock.toFixed(1)}s</td>
          <th>left</th><td>${frame.remaining.toFixed(0)}s</td></tr>
      <tr><th>fire</th><td>${c.active} live</td>
          <th>found</th><td>${c.ever_sensed}/${c.spawned}</td></tr>
      <tr><th>out</th><td>${c.pruned}</td>
          <th>burnt</th><td>${c.burnt}</td></tr>
      <tr><th>perception</th><td>${s.perception.toFixed(1)}</td>
          <th>action</th><td>${s.action.toFixed(1)}</td></tr>
      <tr><th>facility</th><td>${s.facility.toFixed(1)}</td>
          <th>overall</th><td>${s.overall.toFixed(1)}</td></tr>
      <tr><th>penalty</th><td>${s.total_negative.toFixed(1)}</td>
          <th>final</th><td>${s.final.toFixed(1)}</td></tr>
      ${frame.dropped_commands
        ? `<tr><th>dropped</th><td>${frame.dropped_commands}</td></tr>` : ""}
    </table>`;
}
// -- score page --------------------------------------------------------------
export function verbalClass(verbal) {
    if (verbal === "Excellent" || verbal === "Well Done")
        return "grade-top";
    if (verbal === "Almost There!" || verbal === "Fair")
        return "grade-mid";
    return "grade-low";
}
export function scoreTableHtml(summary) {
    const row = (k, v) => `<tr><th>${k}</th><td>${v}</td></tr>`;
    return [
        row("final score", summary.final.toFixed(2)),
        row("perception", summary.perception.toFixed(2)),
        row("action", summary.action.toFixed(2)),
        row("facility", summary.facility.toFixed(2)),
        row("overall", summary.overall.toFixed(2)),
        row("negative reward", summary.total_negative.toFixed(2)),
        row("negative reward ratio", summary.nrr.toFixed(2)),
        row("fire spawned / found / out / burnt", `${summary.spawned} / ${summary.ever_sensed} / ` +
            `${summary.pruned} / ${summary.burnt}`),
        row("episode", `${summary.ticks} ticks, ${summary.clock.toFixed(1)}s` +
            (summary.terminated_early ? " (ended early)" : "")),
    ].join("");
}
