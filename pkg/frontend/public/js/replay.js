/** Replay viewer: page through exported frame files with play/pause/seek.
 *
 * Frames come from a directory of JSON files written by the frame export
 * (manifest.json plus frame_NNNNNN.json); the directory must be reachable
 * over HTTP, e.g. by pointing the server's --out-dir inside its --static
 * root. Frames are fetched lazily and cached.
 */
export class ReplaySource {
    constructor() {
        this.manifest = null;
        this.cache = new Map();
        this.base = "";
    }
    async open(baseUrl) {
        this.base = baseUrl.endsWith("/") ? baseUrl : `${baseUrl}/`;
        this.cache.clear();
        const res = await fetch(`${this.base}manifest.json`);
        if (!res.ok) {
            throw new Error(`manifest fetch failed: ${res.status}`);
        }
        this.manifest = (await res.json());
        return this.manifest;
    }
    get frameCount() {
        return this.manifest ? this.manifest.frames.length : 0;
    }
    async frame(index) {
        if (!this.manifest)
            throw new Error("no replay open");
        const cached = this.cache.get(index);
        if (cached)
            return cached;
        const name = this.manifest.frames[index];
        if (!name)
            throw new Error(`no frame ${index}`);
        const res = await fetch(`${this.base}${name}`);
        if (!res.ok)
            throw new Error(`frame fetch failed: ${res.status}`);
        const scene = (await res.json());
        this.cache.set(index, scene);
        return scene;
    }
}
/** Advance the clock by one frame, stopping at the end. */
export function tickReplay(clock, frameCount) {
    if (!clock.playing)
        return;
    if (clock.index + 1 >= frameCount) {
        clock.playing = false;
        return;
    }
    clock.index += 1;
}
