/** Canvas map renderer. Everything drawn comes from the latest scene. */

import { CELL_UNITS, DISPLAY_COLORS } from "./bounds.gen.js";
import { cellToAnchor, footprintRect, scale, worldToCanvas,
         type Viewport } from "./geometry.js";
import type { PendingGoal } from "./state.js";
import type { AgentSnapshot, Scene } from "./protocol.js";

const AGENT_COLORS: Record<AgentSnapshot["kind"], string> = {
  perception: "#f0f0f0",
  action: "#222222",
  hybrid: "#7a3df0",
};

function drawGrid(ctx: CanvasRenderingContext2D, view: Viewport): void {
  const s = scale(view);
  const step = CELL_UNITS * s;
  ctx.strokeStyle = "rgba(255,255,255,0.12)";
  ctx.lineWidth = 1;
  ctx.beginPath();
  for (let p = 0; p <= view.pixels + 0.5; p += step) {
    ctx.moveTo(p, 0);
    ctx.lineTo(p, view.pixels);
    ctx.moveTo(0, p);
    ctx.lineTo(view.pixels, p);
  }
  ctx.stroke();
}

function drawFacilities(ctx: CanvasRenderingContext2D, view: Viewport,
                        scene: Scene): void {
  for (const fac of scene.facilities) {
    const [x, y, w, h] = footprintRect(view, fac.anchor, fac.footprint,
                                       scene.world.cell);
    const palette = DISPLAY_COLORS as Record<string, string>;
    ctx.fillStyle = palette[fac.kind] ?? "#888888";
    ctx.fillRect(x, y, w, h);
    if (fac.ever_on_fire) {
      ctx.strokeStyle = DISPLAY_COLORS.fire;
      ctx.lineWidth = 2;
      ctx.strokeRect(x + 1, y + 1, w - 2, h - 2);
    }
    if (fac.on_fire > 0) {
      ctx.fillStyle = "rgba(212,42,30,0.45)";
      ctx.fillRect(x, y, w, h);
    }
  }
}

function drawRegions(ctx: CanvasRenderingContext2D, view: Viewport,
                     scene: Scene): void {
  for (const region of scene.regions) {
    const [x, y, w, h] = footprintRect(view, cellToAnchor(region.cell),
                                       [1, 1], scene.world.cell);
    ctx.strokeStyle = DISPLAY_COLORS.fire;
    ctx.lineWidth = 2;
    if (region.ignited) {
      ctx.fillStyle = "rgba(212,42,30,0.25)";
      ctx.fillRect(x, y, w, h);
    }
    ctx.strokeRect(x, y, w, h);
  }
}

function drawSensedFire(ctx: CanvasRenderingContext2D, view: Viewport,
                        scene: Scene): void {
  for (const spot of scene.sensed) {
    const [px, py] = worldToCanvas(view, spot.x, spot.y);
    const radius = 3 + Math.min(Math.log1p(spot.intensity), 9);
    ctx.fillStyle = DISPLAY_COLORS.fire;
    ctx.beginPath();
    ctx.arc(px, py, radius, 0, Math.PI * 2);
    ctx.fill();
    ctx.strokeStyle = "#ffd27d";
    ctx.lineWidth = 1;
    ctx.stroke();
  }
}

function drawGoalChain(ctx: CanvasRenderingContext2D, view: Viewport,
                       agent: AgentSnapshot): void {
  if (agent.goals.length === 0) return;
  ctx.strokeStyle = agent.patrolling ? "#ffd27d" : "#9ad1ff";
  ctx.lineWidth = 1.5;
  ctx.setLineDash([]);
  ctx.beginPath();
  const [ax, ay] = worldToCanvas(view, agent.x, agent.y);
  ctx.moveTo(ax, ay);
  for (const [gx, gy] of agent.goals) {
    const [px, py] = worldToCanvas(view, gx, gy);
    ctx.lineTo(px, py);
  }
  if (agent.patrolling && agent.goals.length > 1) {
    // Patrol chains loop; terminating chains stay open.
    const [fx, fy] = worldToCanvas(view, agent.goals[0][0], agent.goals[0][1]);
    ctx.lineTo(fx, fy);
  }
  ctx.stroke();
  for (const [gx, gy] of agent.goals) {
    const [px, py] = worldToCanvas(view, gx, gy);
    ctx.fillStyle = agent.patrolling ? "#ffd27d" : "#9ad1ff";
    ctx.fillRect(px - 2, py - 2, 4, 4);
  }
}

function drawPendingGoals(ctx: CanvasRenderingContext2D, view: Viewport,
                          pending: PendingGoal[]): void {
  // Optimistic echoes are dashed until a frame confirms them.
  ctx.setLineDash([4, 3]);
  ctx.lineWidth = 1.5;
  for (const goal of pending) {
    const [px, py] = worldToCanvas(view, goal.x, goal.y);
    ctx.strokeStyle = goal.patrol ? "#ffd27d" : "#9ad1ff";
    ctx.strokeRect(px - 4, py - 4, 8, 8);
  }
  ctx.setLineDash([]);
}

function drawAgents(ctx: CanvasRenderingContext2D, view: Viewport,
                    scene: Scene, selected: number): void {
  for (const agent of scene.agents) {
    const [px, py] = worldToCanvas(view, agent.x, agent.y);
    const half = agent.fov_halfwidth * scale(view);
    ctx.strokeStyle = agent.index === selected
      ? "#ffffff" : "rgba(255,255,255,0.35)";
    ctx.lineWidth = agent.index === selected ? 2 : 1;
    ctx.strokeRect(px - half, py - half, half * 2, half * 2);

    ctx.fillStyle = AGENT_COLORS[agent.kind];
    ctx.beginPath();
    ctx.arc(px, py, 6, 0, Math.PI * 2);
    ctx.fill();
    ctx.strokeStyle = agent.retreating ? DISPLAY_COLORS.fire : "#ffffff";
    ctx.lineWidth = 1.5;
    ctx.stroke();

    ctx.fillStyle = agent.kind === "action" ? "#ffffff" : "#111111";
    ctx.font = "9px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(String(agent.index), px, py);
  }
}

export function renderScene(ctx: CanvasRenderingContext2D, view: Viewport,
                            scene: Scene, selected: number,
                            pending: PendingGoal[]): void {
  ctx.fillStyle = DISPLAY_COLORS.grass;
  ctx.fillRect(0, 0, view.pixels, view.pixels);
  drawGrid(ctx, view);
  drawFacilities(ctx, view, scene);
  drawRegions(ctx, view, scene);
  drawSensedFire(ctx, view, scene);
  for (const agent of scene.agents) drawGoalChain(ctx, view, agent);
  drawPendingGoals(ctx, view, pending);
  drawAgents(ctx, view, scene, selected);
}

/** Static map for the designer preview: facilities and regions only. */
export function renderPreview(ctx: CanvasRenderingContext2D, view: Viewport,
                              scene: Scene): void {
  ctx.fillStyle = DISPLAY_COLORS.grass;
  ctx.fillRect(0, 0, view.pixels, view.pixels);
  drawGrid(ctx, view);
  drawFacilities(ctx, view, scene);
  drawRegions(ctx, view, scene);
  drawAgents(ctx, view, scene, 0);
}
