// Stage <-> canvas coordinate mapping.
//
// Stage coordinates put the origin at the center with y pointing up, in
// stage pixels (the gateway's hello carries the stage size). Canvas
// coordinates are backing-store pixels, origin top left, y down. The
// stage is fit into the canvas with uniform scale and letterboxing, so
// the two mappings below are exact inverses of each other; everything
// that positions sprites or interprets taps must go through them.

export interface StageView {
  stageWidth: number;
  stageHeight: number;
  scale: number; // canvas pixels per stage pixel
  offsetX: number; // letterbox origin, canvas pixels
  offsetY: number;
}

export function fitStage(
  canvasWidth: number,
  canvasHeight: number,
  stageWidth: number,
  stageHeight: number,
): StageView {
  const scale = Math.min(canvasWidth / stageWidth, canvasHeight / stageHeight);
  return {
    stageWidth,
    stageHeight,
    scale,
    offsetX: (canvasWidth - stageWidth * scale) / 2,
    offsetY: (canvasHeight - stageHeight * scale) / 2,
  };
}

export function stageToCanvas(view: StageView, x: number, y: number): { x: number; y: number } {
  return {
    x: view.offsetX + (x + view.stageWidth / 2) * view.scale,
    y: view.offsetY + (view.stageHeight / 2 - y) * view.scale,
  };
}

export function canvasToStage(view: StageView, x: number, y: number): { x: number; y: number } {
  return {
    x: (x - view.offsetX) / view.scale - view.stageWidth / 2,
    y: view.stageHeight / 2 - (y - view.offsetY) / view.scale,
  };
}

export function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}
