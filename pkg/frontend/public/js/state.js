/** Client session state and the page graph.
 *
 * Pages follow the flow welcome -> mode pick -> (catalog | designer) ->
 * preview -> playing -> score, with tutorial and replay reachable from the
 * edges. The screen is always a pure function of this object plus the
 * latest frame; nothing simulation-side is ever computed locally.
 */
export function initialState() {
    return {
        page: "welcome",
        presets: [],
        selected: 1,
        frame: null,
        summary: null,
        pendingGoals: [],
        notice: null,
        noticeAt: 0,
        paused: false,
        practice: false,
    };
}
const EDGES = {
    welcome: ["scenario_select", "open_world_form", "tutorial", "replay"],
    scenario_select: ["preview", "welcome", "tutorial"],
    open_world_form: ["preview", "welcome", "tutorial"],
    preview: ["playing", "scenario_select", "open_world_form", "welcome"],
    tutorial: ["welcome"],
    playing: ["score"],
    score: ["welcome", "scenario_select", "replay"],
    replay: ["welcome", "score"],
};
export function canNavigate(from, to) {
    return EDGES[from].includes(to);
}
export function navigate(state, to) {
    if (!canNavigate(state.page, to))
        return false;
    state.page = to;
    return true;
}
/** Fold a new frame in: adopt server selection, retire confirmed echoes. */
export function acceptFrame(state, frame) {
    state.frame = frame;
    state.selected = frame.selected;
    state.pendingGoals = state.pendingGoals.filter((pending) => {
        const agent = frame.agents.find((a) => a.index === pending.agent);
        if (!agent)
            return false;
        const landed = agent.goals.some(([gx, gy]) => Math.abs(gx - pending.x) < 1e-6 &&
            Math.abs(gy - pending.y) < 1e-6);
        return !landed && frame.seq - pending.sentSeq < 50;
    });
}
export function showNotice(state, text, now) {
    state.notice = text;
    state.noticeAt = now;
}
