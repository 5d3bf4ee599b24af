import { describe, expect, it } from "vitest";
import { canvasToStage, fitStage, stageToCanvas } from "../src/coords.js";

// Deterministic LCG so failures reproduce.
function makeRng(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 2 ** 32;
  };
}

describe("stage fitting", () => {
  it("fills the canvas exactly when aspect ratios match", () => {
    const view = fitStage(960, 720, 480, 360);
    expect(view.scale).toBe(2);
    expect(view.offsetX).toBe(0);
    expect(view.offsetY).toBe(0);
  });

  it("letterboxes a wide canvas symmetrically", () => {
    const view = fitStage(1000, 300, 400, 300);
    expect(view.scale).toBe(1);
    expect(view.offsetX).toBe(300);
    expect(view.offsetY).toBe(0);
  });

  it("puts stage y up, canvas y down", () => {
    const view = fitStage(480, 360, 480, 360);
    const top = stageToCanvas(view, 0, 180);
    const bottom = stageToCanvas(view, 0, -180);
    expect(top.y).toBe(0);
    expect(bottom.y).toBe(360);
    expect(top.x).toBe(240);
  });

  it("maps the origin to the canvas center", () => {
    const view = fitStage(800, 480, 1080, 1920);
    const center = stageToCanvas(view, 0, 0);
    expect(center.x).toBeCloseTo(400, 9);
    expect(center.y).toBeCloseTo(240, 9);
  });
});

describe("round trip", () => {
  it("stage -> canvas -> stage stays within half a pixel everywhere", () => {
    const rng = makeRng(7);
    for (let trial = 0; trial < 50; trial++) {
      const stageW = 100 + Math.floor(rng() * 2000);
      const stageH = 100 + Math.floor(rng() * 2000);
      const canvasW = 50 + Math.floor(rng() * 3000);
      const canvasH = 50 + Math.floor(rng() * 3000);
      const view = fitStage(canvasW, canvasH, stageW, stageH);
      for (let i = 0; i < 20; i++) {
        const x = (rng() - 0.5) * stageW;
        const y = (rng() - 0.5) * stageH;
        const c = stageToCanvas(view, x, y);
        const back = canvasToStage(view, c.x, c.y);
        expect(Math.abs(back.x - x)).toBeLessThan(0.5);
        expect(Math.abs(back.y - y)).toBeLessThan(0.5);
      }
    }
  });

  it("canvas -> stage -> canvas stays within half a pixel everywhere", () => {
    const rng = makeRng(11);
    for (let trial = 0; trial < 50; trial++) {
      const stageW = 100 + Math.floor(rng() * 2000);
      const stageH = 100 + Math.floor(rng() * 2000);
      const canvasW = 50 + Math.floor(rng() * 3000);
      const canvasH = 50 + Math.floor(rng() * 3000);
      const view = fitStage(canvasW, canvasH, stageW, stageH);
      for (let i = 0; i < 20; i++) {
        const x = rng() * canvasW;
        const y = rng() * canvasH;
        const s = canvasToStage(view, x, y);
        const back = stageToCanvas(view, s.x, s.y);
        expect(Math.abs(back.x - x)).toBeLessThan(0.5);
        expect(Math.abs(back.y - y)).toBeLessThan(0.5);
      }
    }
  });
});
