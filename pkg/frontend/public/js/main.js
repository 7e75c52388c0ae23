/** Bootstrap: wire the socket, the pages, and the input grammar together. */
import { canvasToWorld } from "./geometry.js";
import { draftToConfig, validateDraft } from "./form.js";
import { interpretInput } from "./input.js";
import { SessionSocket } from "./net.js";
import { addAgentRow, addFacilityRow, addRegionRow, fillChoiceSelects, fillPresetTable, infoPanelHtml, readDraft, scoreTableHtml, showViolations, verbalClass } from "./pages.js";
import { previewScene } from "./preview.js";
import { renderPreview, renderScene } from "./render.js";
import { ReplaySource, tickReplay } from "./replay.js";
import { acceptFrame, initialState, navigate, showNotice } from "./state.js";
const STALE_AFTER_MS = 2000;
const state = initialState();
const socket = new SessionSocket();
function el(id) {
    return document.getElementById(id);
}
const banner = el("banner");
const mapCanvas = el("map-canvas");
const mapCtx = mapCanvas.getContext("2d");
const previewCanvas = el("preview-canvas");
const previewCtx = previewCanvas.getContext("2d");
const replayCanvas = el("replay-canvas");
const replayCtx = replayCanvas.getContext("2d");
const form = el("world-form");
const violationsList = el("form-violations");
const noticeSpan = el("notice");
let loadedConfig = null;
let designOrigin = "scenario_select";
let lastError = "";
let lastReconnectAt = 0;
// -- page switching -----------------------------------------------------------
function showPage(page) {
    if (!navigate(state, page))
        return;
    for (const section of document.querySelectorAll(".page")) {
        section.classList.toggle("hidden", section.id !== `page-${page}`);
    }
    if (page === "playing")
        mapCanvas.focus();
    if (page === "preview" && loadedConfig)
        drawPreviewPage();
}
// -- socket -------------------------------------------------------------------
function wsUrl() {
    const scheme = location.protocol === "https:" ? "wss" : "ws";
    return `${scheme}://${location.host}/session`;
}
socket.onOpen(() => {
    banner.classList.add("hidden");
    el("conn-line").textContent =
        `connected to ${location.host}`;
    socket.send({ type: "hello" });
});
socket.onClose(() => {
    banner.textContent = "connection lost, retrying";
    banner.classList.remove("hidden");
    setTimeout(() => socket.connect(wsUrl()), 1000);
});
socket.onMessage((msg) => {
    switch (msg.type) {
        case "welcome":
        case "presets":
            state.presets = msg.presets;
            fillPresetTable(el("preset-table").tBodies[0], msg.presets, loadPreset);
            break;
        case "scenario_loaded":
            loadedConfig = msg.config;
            state.practice = msg.practice;
            state.summary = null;
            state.pendingGoals = [];
            showViolations(violationsList, []);
            showPage("preview");
            break;
        case "running":
            state.paused = false;
            el("btn-pause").textContent = "Pause";
            if (state.page !== "playing")
                showPage("playing");
            break;
        case "paused":
            state.paused = true;
            el("btn-pause").textContent = "Resume";
            break;
        case "state":
            acceptFrame(state, msg);
            break;
        case "finished":
            if (msg.summary)
                state.summary = msg.summary;
            fillScorePage();
            showPage("score");
            break;
        case "saved":
            el("save-line").textContent =
                `saved ${msg.bytes} bytes to ${msg.path}`;
            break;
        case "frames_exported":
            el("save-line").textContent =
                `exported ${msg.count} frames`;
            el("replay-url").value = "frames/";
            showPage("replay");
            void openReplay();
            break;
        case "error":
            lastError = `${msg.code}: ${msg.message}`;
            if (state.page === "open_world_form") {
                showViolations(violationsList, [], lastError);
            }
            else {
                showNotice(state, lastError, performance.now());
            }
            break;
        case "queued":
        case "bye":
            break;
    }
});
// -- scenario loading ---------------------------------------------------------
function loadPreset(id) {
    designOrigin = "scenario_select";
    const seedRaw = el("preset-seed").value.trim();
    const seed = Number(seedRaw);
    socket.send({
        type: "load_scenario",
        preset: id,
        ...(seedRaw !== "" && Number.isFinite(seed) ? { seed } : {}),
    });
}
form.addEventListener("submit", (event) => {
    event.preventDefault();
    designOrigin = "open_world_form";
    const draft = readDraft(form);
    const violations = validateDraft(draft);
    if (violations.length > 0) {
        showViolations(violationsList, violations);
        return;
    }
    showViolations(violationsList, []);
    socket.send({ type: "load_scenario", config: draftToConfig(draft) });
});
function drawPreviewPage() {
    if (!loadedConfig)
        return;
    const scene = previewScene(loadedConfig);
    const view = { worldSize: scene.world.size,
        pixels: previewCanvas.width };
    renderPreview(previewCtx, view, scene);
    el("preview-title").textContent =
        `Preview: ${loadedConfig.name}` + (state.practice ? " (practice)" : "");
    el("preview-summary").innerHTML =
        `<p>${loadedConfig.regions.length} fire region(s), ` +
            `${loadedConfig.facilities.length} facilities, ` +
            `${loadedConfig.agents.length} agents, ` +
            `${loadedConfig.world.duration}s on a ` +
            `${loadedConfig.world.size}-unit map.</p>`;
}
// -- live play ----------------------------------------------------------------
function inputContext() {
    const frame = state.frame;
    return {
        playing: state.page === "playing" && frame !== null && !frame.terminated,
        selected: state.selected,
        team: frame ? frame.agents.map((a) => ({ index: a.index, kind: a.kind }))
            : [],
    };
}
function handleInput(input) {
    const outcome = interpretInput(input, inputContext());
    if (outcome === null)
        return;
    if ("notice" in outcome) {
        showNotice(state, outcome.notice, performance.now());
        return;
    }
    const command = outcome.command;
    socket.send({ type: "command", command });
    // Optimistic echo, marked until a frame confirms it.
    if (command.action === "select") {
        state.selected = command.agent;
    }
    else if (command.action === "goal" && state.frame) {
        state.pendingGoals.push({
            agent: command.agent, x: command.x, y: command.y,
            patrol: command.patrol, sentSeq: state.frame.seq,
        });
    }
}
document.addEventListener("keydown", (event) => {
    if (state.page !== "playing")
        return;
    if (event.key === "ArrowUp" || event.key === "ArrowDown") {
        event.preventDefault();
    }
    handleInput({ kind: "key", key: event.key });
});
mapCanvas.addEventListener("click", (event) => {
    if (!state.frame)
        return;
    const rect = mapCanvas.getBoundingClientRect();
    const view = { worldSize: state.frame.world.size,
        pixels: mapCanvas.width };
    const [x, y] = canvasToWorld(view, event.clientX - rect.left, event.clientY - rect.top);
    handleInput({ kind: "click", x, y, shift: event.shiftKey });
});
el("btn-pause").addEventListener("click", () => {
    socket.send({ type: state.paused ? "resume" : "pause" });
});
function renderLoop() {
    if (state.page === "playing" && state.frame) {
        const frame = state.frame;
        const view = { worldSize: frame.world.size,
            pixels: mapCanvas.width };
        renderScene(mapCtx, view, frame, state.selected, state.pendingGoals);
        el("info-panel").innerHTML =
            infoPanelHtml(frame, state.selected);
        const stale = socket.staleness();
        if (stale > STALE_AFTER_MS && !state.paused && !frame.terminated) {
            banner.textContent = "no updates from the server, reconnecting";
            banner.classList.remove("hidden");
            const now = performance.now();
            if (stale > STALE_AFTER_MS * 2 && now - lastReconnectAt > 3000) {
                lastReconnectAt = now;
                socket.connect(wsUrl());
            }
        }
        else if (socket.connected) {
            banner.classList.add("hidden");
        }
    }
    if (state.notice && performance.now() - state.noticeAt > 4000) {
        state.notice = null;
    }
    noticeSpan.textContent = state.notice ?? "";
    requestAnimationFrame(renderLoop);
}
// -- score page ---------------------------------------------------------------
function fillScorePage() {
    const summary = state.summary;
    const verbalLine = el("verbal-line");
    if (!summary) {
        verbalLine.textContent = "Episode finished";
        return;
    }
    verbalLine.textContent = summary.verbal;
    verbalLine.className = verbalClass(summary.verbal);
    el("score-table").innerHTML = scoreTableHtml(summary);
}
el("btn-save-playback").addEventListener("click", () => {
    const summary = state.summary;
    const name = summary
        ? `${summary.scenario}-seed${summary.seed}.fclog` : "episode.fclog";
    socket.send({ type: "save_playback", name });
});
el("btn-open-replay").addEventListener("click", () => {
    socket.send({ type: "export_frames", name: "frames", every: 10 });
});
// -- replay viewer ------------------------------------------------------------
const replaySource = new ReplaySource();
const replayClock = { index: 0, playing: false };
const replaySlider = el("replay-slider");
const replayPlay = el("btn-replay-play");
async function openReplay() {
    const errorLine = el("replay-error");
    errorLine.textContent = "";
    try {
        const manifest = await replaySource.open(el("replay-url").value.trim());
        replaySlider.max = String(manifest.frames.length - 1);
        replaySlider.value = "0";
        replaySlider.disabled = false;
        replayPlay.disabled = false;
        replayClock.index = 0;
        replayClock.playing = false;
        replayPlay.textContent = "Play";
        await drawReplayFrame();
    }
    catch (err) {
        errorLine.textContent =
            `${err instanceof Error ? err.message : err} (check the path and retry)`;
    }
}
async function drawReplayFrame() {
    if (!replaySource.manifest)
        return;
    const scene = await replaySource.frame(replayClock.index);
    const view = { worldSize: scene.world.size,
        pixels: replayCanvas.width };
    renderScene(replayCtx, view, scene, 0, []);
    el("replay-label").textContent =
        `frame ${replayClock.index + 1}/${replaySource.frameCount} ` +
            `(tick ${scene.tick}${scene.subframe ? `+${scene.subframe}` : ""})`;
    replaySlider.value = String(replayClock.index);
}
el("btn-replay-open").addEventListener("click", () => {
    void openReplay();
});
replayPlay.addEventListener("click", () => {
    replayClock.playing = !replayClock.playing;
    replayPlay.textContent = replayClock.playing ? "Pause" : "Play";
});
replaySlider.addEventListener("input", () => {
    replayClock.index = Number(replaySlider.value);
    replayClock.playing = false;
    replayPlay.textContent = "Play";
    void drawReplayFrame();
});
setInterval(() => {
    if (state.page !== "replay" || !replayClock.playing)
        return;
    tickReplay(replayClock, replaySource.frameCount);
    void drawReplayFrame();
}, 100);
// -- navigation buttons -------------------------------------------------------
const nav = [
    ["btn-scenario-mode", "scenario_select"],
    ["btn-open-world", "open_world_form"],
    ["btn-tutorial", "tutorial"],
    ["btn-replay-viewer", "replay"],
    ["btn-select-back", "welcome"],
    ["btn-form-back", "welcome"],
    ["btn-tutorial-back", "welcome"],
    ["btn-score-home", "welcome"],
    ["btn-score-scenarios", "scenario_select"],
    ["btn-replay-back", "welcome"],
];
for (const [id, page] of nav) {
    el(id).addEventListener("click", () => showPage(page));
}
el("btn-preview-back").addEventListener("click", () => {
    showPage(designOrigin);
});
el("btn-start").addEventListener("click", () => {
    socket.send({ type: "start" });
});
// -- designer initial rows ----------------------------------------------------
fillChoiceSelects(form);
addRegionRow(el("region-rows"));
addFacilityRow(el("facility-rows"), "base");
addFacilityRow(el("facility-rows"), "house");
addAgentRow(el("agent-rows"), "perception");
addAgentRow(el("agent-rows"), "action");
el("btn-add-region").addEventListener("click", () => addRegionRow(el("region-rows")));
el("btn-add-facility").addEventListener("click", () => addFacilityRow(el("facility-rows"), "house"));
el("btn-add-agent").addEventListener("click", () => addAgentRow(el("agent-rows"), "perception"));
socket.connect(wsUrl());
requestAnimationFrame(renderLoop);
