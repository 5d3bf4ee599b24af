import { describe, expect, it } from "vitest";
import { Sprite, SpriteSheet } from "../src/assets.js";
import { canvasToStage, fitStage, stageToCanvas } from "../src/coords.js";
import { DisplayEntry } from "../src/protocol.js";
import { buildDrawOps, entryMatrix } from "../src/render.js";
import { Rgb, apply, colorAt } from "./helpers.js";

// Every look is a solid-color square; the color tag is what the probe
// in helpers.ts reads back.
function sheetOf(table: Record<string, { size: number; color: Rgb }>): SpriteSheet {
  return {
    get(_scene: string, _object: string, look: string): Sprite | null {
      const spec = table[look];
      if (!spec) return null;
      return {
        width: spec.size,
        height: spec.size,
        image: { color: spec.color } as unknown as CanvasImageSource,
      };
    },
  };
}

function entry(overrides: Partial<DisplayEntry>): DisplayEntry {
  return {
    id: 1,
    object: "obj",
    look: "red",
    x: 0,
    y: 0,
    rotation: 0,
    scale: 1,
    transparency: 0,
    visible: true,
    layer: 0,
    brightness: 100,
    ...overrides,
  };
}

const sheet = sheetOf({
  red: { size: 100, color: [255, 0, 0] },
  blue: { size: 100, color: [0, 0, 255] },
});

// Stage and canvas the same size: scale 1, no letterbox, so expected
// pixel positions are easy to state exactly.
const view = fitStage(480, 360, 480, 360);

describe("draw list", () => {
  it("skips hidden, fully transparent, and unloaded entries", () => {
    const display = [
      entry({ id: 1, look: "red" }),
      entry({ id: 2, look: "blue", visible: false }),
      entry({ id: 3, look: "blue", transparency: 100 }),
      entry({ id: 4, look: "missing" }),
    ];
    const ops = buildDrawOps(display, view, sheet, "s");
    expect(ops.map((op) => op.entry.id)).toEqual([1]);
  });

  it("keeps the wire order, which is back to front", () => {
    const display = [
      entry({ id: 1, look: "red", layer: 0 }),
      entry({ id: 2, look: "blue", layer: 3 }),
    ];
    const ops = buildDrawOps(display, view, sheet, "s");
    expect(ops.map((op) => op.entry.look)).toEqual(["red", "blue"]);
  });
});

describe("layer order pixel probe", () => {
  it("the later entry wins where two sprites overlap", () => {
    // red centered at stage (0,0), blue shifted right; both 100x100
    const display = [
      entry({ id: 1, object: "a", look: "red", layer: 1 }),
      entry({ id: 2, object: "b", look: "blue", x: 60, layer: 2 }),
    ];
    const ops = buildDrawOps(display, view, sheet, "s");

    const overlap = stageToCanvas(view, 30, 0); // covered by both
    const redOnly = stageToCanvas(view, -40, 0);
    const blueOnly = stageToCanvas(view, 100, 0);
    const outside = stageToCanvas(view, 0, 150);

    expect(colorAt(ops, overlap.x, overlap.y)).toEqual([0, 0, 255]);
    expect(colorAt(ops, redOnly.x, redOnly.y)).toEqual([255, 0, 0]);
    expect(colorAt(ops, blueOnly.x, blueOnly.y)).toEqual([0, 0, 255]);
    expect(colorAt(ops, outside.x, outside.y)).toEqual([255, 255, 255]);
  });

  it("partial transparency blends instead of replacing", () => {
    const display = [
      entry({ id: 1, object: "a", look: "red" }),
      entry({ id: 2, object: "b", look: "blue", transparency: 50 }),
    ];
    const ops = buildDrawOps(display, view, sheet, "s");
    const center = stageToCanvas(view, 0, 0);
    const [r, g, b] = colorAt(ops, center.x, center.y);
    expect(r).toBeCloseTo(127.5, 6);
    expect(g).toBeCloseTo(0, 6);
    expect(b).toBeCloseTo(127.5, 6);
  });
});

describe("entry transform", () => {
  it("places the sprite center exactly at the mapped stage position", () => {
    for (const [x, y] of [
      [0, 0],
      [123.4, -87.2],
      [-540, 960],
    ]) {
      const m = entryMatrix(view, x, y, 33, 1.7);
      const center = apply(m, 0, 0);
      const expected = stageToCanvas(view, x, y);
      expect(center.x).toBeCloseTo(expected.x, 9);
      expect(center.y).toBeCloseTo(expected.y, 9);
    }
  });

  it("rotation is clockwise from up in stage space", () => {
    // at 90 degrees the image's top edge must point toward stage +x
    const m = entryMatrix(view, 0, 0, 90, 1);
    const top = apply(m, 0, -50);
    const expected = stageToCanvas(view, 50, 0);
    expect(top.x).toBeCloseTo(expected.x, 9);
    expect(top.y).toBeCloseTo(expected.y, 9);
  });

  it("tap mapping is the exact inverse of sprite placement", () => {
    // a sprite drawn at (x, y) and a tap on its drawn center must agree
    // within half a pixel, whatever the letterboxing
    const views = [view, fitStage(333, 777, 1080, 1920), fitStage(1920, 400, 480, 360)];
    for (const v of views) {
      for (const [x, y] of [
        [0, 0],
        [250.25, -111.5],
        [-539.9, 959.9],
      ]) {
        const drawn = apply(entryMatrix(v, x, y, 45, 2.5), 0, 0);
        const tap = canvasToStage(v, drawn.x, drawn.y);
        expect(Math.abs(tap.x - x)).toBeLessThan(0.5);
        expect(Math.abs(tap.y - y)).toBeLessThan(0.5);
      }
    }
  });
});
