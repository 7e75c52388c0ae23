/** Input grammar: raw events in, protocol commands or notices out.
 *
 * Pure functions so the whole grammar is testable without a DOM. The
 * caller translates browser events into UiInput values (clicks already in
 * world units) and sends whatever command comes back over the socket.
 */

import type { CommandBody } from "./protocol.js";

export type AgentKindName = "perception" | "action" | "hybrid";

export interface TeamMember {
  index: number;        // 1-based roster position
  kind: AgentKindName;
}

export interface InputContext {
  playing: boolean;     // commands are only legal during live play
  selected: number;     // currently selected roster index
  team: TeamMember[];
}

export type UiInput =
  | { kind: "key"; key: string }                            // KeyboardEvent.key
  | { kind: "click"; x: number; y: number; shift: boolean }; // world units

export type InputOutcome =
  | { command: CommandBody }
  | { notice: string }
  | null;

export function interpretInput(input: UiInput, ctx: InputContext): InputOutcome {
  if (!ctx.playing) return null;

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
