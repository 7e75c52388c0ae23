/** Input grammar: raw events in, protocol commands or notices out.
 *
 * Pure functions so the whole grammar is testable without a DOM. The
 * caller translates browser events into UiInput values (clicks already in
 * world units) and sends whatever command comes back over the socket.
 */
export function interpretInput(input, ctx) {
    if (!ctx.playing)
        return null;
    if (input.kind === "click") {
        // Shift marks the goal as a patrol stop; the chain loops once any of
        // its goals carries the flag.
        return {
            command: {
                action: "goal",
                x: input.x,
                y: input.y,
                patrol: input.shift,
                agent: ctx.selected,
            },
        };
    }
    const key = input.key;
    if (key >= "1" && key <= "9" && key.length === 1) {
        const index = Number(key);
        if (index > ctx.team.length) {
            return { notice: `no agent ${index}: the team has ${ctx.team.length}` };
        }
        return { command: { action: "select", agent: index } };
    }
    if (key === "ArrowUp" || key === "ArrowDown") {
        const agent = ctx.team.find((m) => m.index === ctx.selected);
        if (agent && agent.kind === "action") {
            return { notice: "suppression craft fly at a fixed altitude" };
        }
        return {
            command: {
                action: "altitude",
                direction: key === "ArrowUp" ? "up" : "down",
                agent: ctx.selected,
            },
        };
    }
    return null;
}
