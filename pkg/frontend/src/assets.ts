import { assetUrl } from "./protocol.js";

// A look that is ready to draw. `image` is whatever drawImage accepts;
// width/height are its natural pixel size, which is also its size in
// stage units at sprite scale 1.
export interface Sprite {
  width: number;
  height: number;
  image: CanvasImageSource;
}

export interface SpriteSheet {
  get(scene: string, object: string, look: string): Sprite | null;
}

// Fetches look images from the gateway's asset endpoint on first use.
// get() returns null while a look is still loading (the renderer just
// skips it until it arrives) and keeps returning null for looks the
// server 404s, so a bad name cannot wedge the render loop with retries.
export class AssetCache implements SpriteSheet {
  private loaded = new Map<string, Sprite>();
  private pending = new Set<string>();
  private failed = new Set<string>();

  get(scene: string, object: string, look: string): Sprite | null {
    const key = `${scene}\n${object}\n${look}`;
    const sprite = this.loaded.get(key);
    if (sprite) return sprite;
    if (!this.pending.has(key) && !this.failed.has(key)) {
      this.pending.add(key);
      const img = new Image();
      img.onload = () => {
        this.pending.delete(key);
        this.loaded.set(key, { width: img.naturalWidth, height: img.naturalHeight, image: img });
      };
      img.onerror = () => {
        this.pending.delete(key);
        this.failed.add(key);
        console.warn("look not available:", scene, object, look);
      };
      img.src = assetUrl(scene, object, look);
    }
    return null;
  }
}
