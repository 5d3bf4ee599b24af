import { StageView, stageToCanvas, clamp } from "./coords.js";
import { Sprite, SpriteSheet } from "./assets.js";
import { DisplayEntry, FrameMessage, PenSegment, PenStamp, WatchedValue } from "./protocol.js";

// Column-major 2x3 affine, same layout as ctx.setTransform(a, b, c, d, e, f):
// canvas = (a*x + c*y + e, b*x + d*y + f).
export type Mat = [number, number, number, number, number, number];

// Transform from sprite-local pixels (origin at the image center, y down)
// to canvas pixels for one display entry. rotation is clockwise degrees
// from up in stage coordinates; because the stage->canvas mapping flips y,
// that is exactly a positive canvas-space rotation, no extra flip.
export function entryMatrix(
  view: StageView,
  x: number,
  y: number,
  rotation: number,
  scale: number,
): Mat {
  const pos = stageToCanvas(view, x, y);
  const k = scale * view.scale;
  const theta = (rotation * Math.PI) / 180;
  const cos = Math.cos(theta) * k;
  const sin = Math.sin(theta) * k;
  return [cos, sin, -sin, cos, pos.x, pos.y];
}

export interface DrawOp {
  entry: DisplayEntry;
  matrix: Mat;
  width: number;
  height: number;
  alpha: number; // 0..1, transparency already applied
  brightness: number; // percent
  image: CanvasImageSource;
}

// The display list arrives pre-sorted back to front; painting ops in
// order reproduces the stage. Entries that are hidden, fully transparent
// (transparency >= 100) or whose look has not loaded yet produce no op.
export function buildDrawOps(
  display: DisplayEntry[],
  view: StageView,
  sheet: SpriteSheet,
  scene: string,
): DrawOp[] {
  const ops: DrawOp[] = [];
  for (const entry of display) {
    if (!entry.visible || entry.transparency >= 100) continue;
    const sprite = sheet.get(scene, entry.object, entry.look);
    if (!sprite) continue;
    ops.push({
      entry,
      matrix: entryMatrix(view, entry.x, entry.y, entry.rotation, entry.scale),
      width: sprite.width,
      height: sprite.height,
      alpha: clamp(1 - entry.transparency / 100, 0, 1),
      brightness: entry.brightness,
      image: sprite.image,
    });
  }
  return ops;
}

function paintOp(ctx: CanvasRenderingContext2D, op: DrawOp): void {
  const [a, b, c, d, e, f] = op.matrix;
  ctx.save();
  ctx.setTransform(a, b, c, d, e, f);
  ctx.globalAlpha = op.alpha;
  if (op.brightness !== 100) ctx.filter = `brightness(${op.brightness}%)`;
  ctx.drawImage(op.image, -op.width / 2, -op.height / 2, op.width, op.height);
  ctx.restore();
}

export interface Bubble {
  kind: "say" | "think";
  text: string;
}

// Persistent ink. Segments and stamps arrive once, on the frame that drew
// them, so they are rasterized into an offscreen canvas held in stage
// resolution and composited under the sprites each frame.
export class PenLayer {
  canvas: HTMLCanvasElement | null = null;
  private ctx: CanvasRenderingContext2D | null = null;
  private stageWidth = 0;
  private stageHeight = 0;

  private ensure(view: StageView): CanvasRenderingContext2D | null {
    if (!this.canvas || this.stageWidth !== view.stageWidth || this.stageHeight !== view.stageHeight) {
      this.stageWidth = view.stageWidth;
      this.stageHeight = view.stageHeight;
      this.canvas = document.createElement("canvas");
      this.canvas.width = view.stageWidth;
      this.canvas.height = view.stageHeight;
      this.ctx = this.canvas.getContext("2d");
    }
    return this.ctx;
  }

  add(view: StageView, segments: PenSegment[], stamps: PenStamp[], sheet: SpriteSheet, scene: string): void {
    if (!segments.length && !stamps.length) return;
    const ctx = this.ensure(view);
    if (!ctx) return;
    const w = view.stageWidth;
    const h = view.stageHeight;
    ctx.lineCap = "round";
    for (const seg of segments) {
      ctx.strokeStyle = `rgb(${seg.color[0]}, ${seg.color[1]}, ${seg.color[2]})`;
      ctx.lineWidth = seg.size;
      ctx.beginPath();
      ctx.moveTo(seg.x1 + w / 2, h / 2 - seg.y1);
      ctx.lineTo(seg.x2 + w / 2, h / 2 - seg.y2);
      ctx.stroke();
    }
    // Stamps reuse the sprite transform with an identity view: the pen
    // canvas is already in stage resolution.
    const flat: StageView = { stageWidth: w, stageHeight: h, scale: 1, offsetX: 0, offsetY: 0 };
    for (const stamp of stamps) {
      if (stamp.transparency >= 100) continue;
      const sprite = sheet.get(scene, stamp.object, stamp.look);
      if (!sprite) continue; // not loaded yet; the stamp is lost, ink is best effort
      const [a, b, c, d, e, f] = entryMatrix(flat, stamp.x, stamp.y, stamp.rotation, stamp.scale);
      ctx.save();
      ctx.setTransform(a, b, c, d, e, f);
      ctx.globalAlpha = clamp(1 - stamp.transparency / 100, 0, 1);
      ctx.drawImage(sprite.image, -sprite.width / 2, -sprite.height / 2, sprite.width, sprite.height);
      ctx.restore();
    }
  }

  clear(): void {
    if (this.ctx && this.canvas) {
      this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    }
  }
}

function paintBubble(
  ctx: CanvasRenderingContext2D,
  view: StageView,
  entry: DisplayEntry,
  sprite: Sprite | null,
  bubble: Bubble,
): void {
  const pos = stageToCanvas(view, entry.x, entry.y);
  const lift = sprite ? (sprite.height * entry.scale * view.scale) / 2 : 20;
  ctx.save();
  ctx.font = "13px system-ui, sans-serif";
  const padding = 8;
  const metrics = ctx.measureText(bubble.text);
  const w = metrics.width + padding * 2;
  const h = 26;
  const bx = pos.x - w / 2;
  const by = pos.y - lift - h - 10;
  ctx.fillStyle = "#ffffff";
  ctx.strokeStyle = "#555555";
  ctx.lineWidth = 1.5;
  if (bubble.kind === "think") ctx.setLineDash([4, 3]);
  ctx.beginPath();
  const r = 8;
  ctx.roundRect(bx, by, w, h, r);
  ctx.fill();
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = "#222222";
  ctx.textBaseline = "middle";
  ctx.fillText(bubble.text, bx + padding, by + h / 2);
  ctx.restore();
}

function paintAxes(ctx: CanvasRenderingContext2D, view: StageView): void {
  const w = view.stageWidth / 2;
  const h = view.stageHeight / 2;
  const center = stageToCanvas(view, 0, 0);
  const right = stageToCanvas(view, w, 0);
  const left = stageToCanvas(view, -w, 0);
  const top = stageToCanvas(view, 0, h);
  const bottom = stageToCanvas(view, 0, -h);
  ctx.save();
  ctx.strokeStyle = "rgba(200, 40, 40, 0.9)";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(left.x, left.y);
  ctx.lineTo(right.x, right.y);
  ctx.moveTo(top.x, top.y);
  ctx.lineTo(bottom.x, bottom.y);
  ctx.stroke();
  ctx.fillStyle = "rgba(200, 40, 40, 0.9)";
  ctx.font = "12px system-ui, sans-serif";
  ctx.textBaseline = "bottom";
  ctx.fillText("0,0", center.x + 4, center.y - 4);
  ctx.fillText(`x ${w}`, right.x - 44, right.y - 6);
  ctx.textBaseline = "top";
  ctx.fillText(`y ${h}`, top.x + 6, top.y + 4);
  ctx.restore();
}

function paintWatched(ctx: CanvasRenderingContext2D, view: StageView, watched: WatchedValue[]): void {
  ctx.save();
  ctx.font = "13px system-ui, sans-serif";
  ctx.textBaseline = "top";
  let y = view.offsetY + 8;
  for (const entry of watched) {
    const label = entry.object ? `${entry.object}: ${entry.name}` : entry.name;
    const text = `${label} = ${entry.value}`;
    const w = ctx.measureText(text).width;
    ctx.fillStyle = "rgba(255, 255, 255, 0.85)";
    ctx.fillRect(view.offsetX + 8, y, w + 12, 20);
    ctx.fillStyle = "#1a3a6b";
    ctx.fillText(text, view.offsetX + 14, y + 3);
    y += 24;
  }
  ctx.restore();
}

// Paint one frame. `segments`/`stamps` are the ink gathered since the
// last paint (possibly from several frames: the loop may skip rendering
// under load, but ink must not be lost). The pen layer sits directly
// above the backdrop (the instance with id 0, always first in the
// display list when present) and under every other sprite.
export function renderFrame(
  ctx: CanvasRenderingContext2D,
  frame: FrameMessage,
  view: StageView,
  sheet: SpriteSheet,
  pen: PenLayer,
  bubbles: Map<string, Bubble>,
  segments: PenSegment[],
  stamps: PenStamp[],
): void {
  pen.add(view, segments, stamps, sheet, frame.scene);

  ctx.setTransform(1, 0, 0, 1, 0, 0);
  ctx.fillStyle = "#16181d";
  ctx.fillRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  const stageOrigin = stageToCanvas(view, -view.stageWidth / 2, view.stageHeight / 2);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(stageOrigin.x, stageOrigin.y, view.stageWidth * view.scale, view.stageHeight * view.scale);

  const ops = buildDrawOps(frame.display, view, sheet, frame.scene);
  let next = 0;
  if (ops.length && ops[0].entry.id === 0) {
    paintOp(ctx, ops[0]);
    next = 1;
  }
  if (pen.canvas) {
    ctx.drawImage(
      pen.canvas,
      stageOrigin.x,
      stageOrigin.y,
      view.stageWidth * view.scale,
      view.stageHeight * view.scale,
    );
  }
  for (; next < ops.length; next++) paintOp(ctx, ops[next]);

  for (const entry of frame.display) {
    if (!entry.visible || entry.transparency >= 100) continue;
    const bubble = bubbles.get(entry.object);
    if (!bubble) continue;
    paintBubble(ctx, view, entry, sheet.get(frame.scene, entry.object, entry.look), bubble);
  }

  if (frame.axes_visible) paintAxes(ctx, view);
  if (frame.watched.length) paintWatched(ctx, view, frame.watched);
}
