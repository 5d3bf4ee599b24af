import { ChildProcess, execFileSync, spawn } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import WebSocket from "ws";
import { DrawOp, Mat } from "../src/render.js";
import { SocketLike } from "../src/session.js";

// --- affine helpers for the software probe ---

export function apply(m: Mat, x: number, y: number): { x: number; y: number } {
  const [a, b, c, d, e, f] = m;
  return { x: a * x + c * y + e, y: b * x + d * y + f };
}

export function applyInverse(m: Mat, x: number, y: number): { x: number; y: number } {
  const [a, b, c, d, e, f] = m;
  const det = a * d - b * c;
  const dx = x - e;
  const dy = y - f;
  return { x: (d * dx - c * dy) / det, y: (a * dy - b * dx) / det };
}

export type Rgb = [number, number, number];

// Test sprites are solid-color rectangles: the fake sheet tags each
// image object with a color, and this probe composites the draw ops the
// same way the canvas would (source-over, in list order) at one point.
export function colorAt(ops: DrawOp[], x: number, y: number, background: Rgb = [255, 255, 255]): Rgb {
  let out: Rgb = background;
  for (const op of ops) {
    const local = applyInverse(op.matrix, x, y);
    if (Math.abs(local.x) > op.width / 2 || Math.abs(local.y) > op.height / 2) continue;
    const src = (op.image as unknown as { color: Rgb }).color;
    const alpha = op.alpha;
    out = [
      src[0] * alpha + out[0] * (1 - alpha),
      src[1] * alpha + out[1] * (1 - alpha),
      src[2] * alpha + out[2] * (1 - alpha),
    ];
  }
  return out;
}

// --- session test doubles ---

export class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  onopen: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;
  onerror: ((ev?: unknown) => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
    this.onclose?.();
  }

  serverSends(message: Record<string, unknown>): void {
    this.onmessage?.({ data: JSON.stringify(message) });
  }

  serverCloses(): void {
    this.onclose?.();
  }

  sentJson(): Record<string, unknown>[] {
    return this.sent.map((text) => JSON.parse(text));
  }
}

export function frameStub(seq: number, extra: Partial<Record<string, unknown>> = {}): Record<string, unknown> {
  return {
    type: "frame",
    seq,
    hash: "0".repeat(64),
    scene: "s",
    display: [],
    events: [],
    pen_segments: [],
    pen_stamps: [],
    watched: [],
    consumed_inputs: [],
    axes_visible: false,
    ...extra,
  };
}

export const helloStub = {
  type: "hello",
  protocol_version: 1,
  project_name: "p",
  stage_width: 480,
  stage_height: 360,
};

// --- real gateway for the integration tests ---

export interface Gateway {
  wsUrl: string;
  proc: ChildProcess;
  stop(): Promise<void>;
}

let mazeZip: string | null = null;

function buildMazeZip(): string {
  if (mazeZip) return mazeZip;
  const dir = mkdtempSync(join(tmpdir(), "player-test-"));
  const path = join(dir, "maze.zip");
  const code = [
    "from brickvm.fixtures.tilt_maze import tilt_maze_project",
    "from brickvm.project.archive import save_project",
    `save_project(tilt_maze_project(), ${JSON.stringify(path)})`,
  ].join("\n");
  execFileSync("python3", ["-c", code], { stdio: "pipe" });
  mazeZip = path;
  return path;
}

// Spawns `serve` on an ephemeral port and resolves once it logs its
// websocket URL. The caller must stop() it.
export function startGateway(): Promise<Gateway> {
  const zip = buildMazeZip();
  const proc = spawn(
    "python3",
    ["-m", "brickvm", "--log-level", "info", "serve", "--project", zip, "--bind", "127.0.0.1:0"],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  return new Promise((resolve, reject) => {
    let stderr = "";
    const timer = setTimeout(() => {
      proc.kill();
      reject(new Error(`gateway did not come up; stderr so far:\n${stderr}`));
    }, 20000);
    proc.stderr!.on("data", (chunk: Buffer) => {
      stderr += chunk.toString();
      const match = stderr.match(/ws:\/\/127\.0\.0\.1:(\d+)\/ws/);
      if (match) {
        clearTimeout(timer);
        resolve({
          wsUrl: match[0],
          proc,
          stop: () =>
            new Promise<void>((done) => {
              proc.once("exit", () => done());
              proc.kill("SIGTERM");
              setTimeout(() => {
                proc.kill("SIGKILL");
                done();
              }, 5000).unref();
            }),
        });
      }
    });
    proc.once("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`gateway exited early (${code}); stderr:\n${stderr}`));
    });
  });
}

export function nodeSocket(url: string): SocketLike {
  return new WebSocket(url) as unknown as SocketLike;
}

export async function until(check: () => boolean, what: string, timeoutMs = 10000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (check()) return;
    await new Promise((r) => setTimeout(r, 5));
  }
  throw new Error(`timed out waiting for ${what}`);
}
