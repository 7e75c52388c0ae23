/** Replay viewer: page through exported frame files with play/pause/seek.
 *
 * Frames come from a directory of JSON files written by the frame export
 * (manifest.json plus frame_NNNNNN.json); the directory must be reachable
 * over HTTP, e.g. by pointing the server's --out-dir inside its --static
 * root. Frames are fetched lazily and cached.
 */

import type { FrameManifest, Scene } from "./protocol.js";

export class ReplaySource {
  manifest: FrameManifest | null = null;
  private cache = new Map<number, Scene>();
  private base = "";

  async open(baseUrl: string): Promise<FrameManifest> {
    this.base = baseUrl.endsWith("/") ? baseUrl : `${baseUrl}/`;
    this.cache.clear();
    const res = await fetch(`${this.base}manifest.json`);
    if (!res.ok) {
      throw new Error(`manifest fetch failed: ${res.status}`);
    }
    this.manifest = (await res.json()) as FrameManifest;
    return this.manifest;
  }

  get frameCount(): number {
    return this.manifest ? this.manifest.frames.length : 0;
  }

  async frame(index: number): Promise<Scene> {
    if (!this.manifest) throw new Error("no replay open");
    const cached = this.cache.get(index);
    if (cached) return cached;
    const name = this.manifest.frames[index];
    if (!name) throw new Error(`no frame ${index}`);
    const res = await fetch(`${this.base}${name}`);
    if (!res.ok) throw new Error(`frame fetch failed: ${res.status}`);
    const scene = (await res.json()) as Scene;
    this.cache.set(index, scene);
    return scene;
  }
}

export interface ReplayClock {
  index: number;
  playing: boolean;
}

/** Advance the clock by one frame, stopping at the end. */
export function tickReplay(clock: ReplayClock, frameCount: number): void {
  if (!clock.playing) return;
  if (clock.index + 1 >= frameCount) {
    clock.playing = false;
    return;
  }
  clock.index += 1;
}
