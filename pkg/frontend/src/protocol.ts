// Message shapes for gateway protocol version 1. One JSON object per
// websocket text frame, both directions.

export const PROTOCOL_VERSION = 1;

export interface HelloMessage {
  type: "hello";
  protocol_version: number;
  project_name: string;
  stage_width: number;
  stage_height: number;
}

export interface DisplayEntry {
  id: number;
  object: string;
  look: string;
  x: number;
  y: number;
  rotation: number; // clockwise degrees from up
  scale: number;
  transparency: number; // 0 opaque .. 100 not drawn
  visible: boolean;
  layer: number;
  brightness: number; // percent, 100 is neutral
}

export interface PenSegment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  size: number;
  color: [number, number, number];
}

export interface PenStamp {
  object: string;
  look: string;
  x: number;
  y: number;
  rotation: number;
  scale: number;
  transparency: number;
}

export interface WatchedValue {
  object: string; // "" for a global
  name: string;
  value: string; // already formatted as display text
}

export interface FrameEvent {
  type: string;
  [key: string]: unknown;
}

export interface FrameMessage {
  type: "frame";
  seq: number;
  hash: string;
  scene: string;
  display: DisplayEntry[];
  events: FrameEvent[];
  pen_segments: PenSegment[];
  pen_stamps: PenStamp[];
  watched: WatchedValue[];
  consumed_inputs: Record<string, unknown>[];
  axes_visible: boolean;
}

export interface ErrorMessage {
  type: "error";
  code: string;
  text: string;
}

export type ServerMessage = HelloMessage | FrameMessage | ErrorMessage;

// Throws on anything that is not one of the three server shapes; the
// session treats that the same as a transport error.
export function parseServerMessage(data: string): ServerMessage {
  let raw: unknown;
  try {
    raw = JSON.parse(data);
  } catch {
    throw new Error("server sent invalid JSON");
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new Error("server message is not an object");
  }
  const message = raw as { type?: unknown };
  if (message.type === "hello" || message.type === "frame" || message.type === "error") {
    return raw as ServerMessage;
  }
  throw new Error(`unknown server message type: ${String(message.type)}`);
}

export type ControlAction = "start" | "pause" | "resume" | "restart" | "toggle_axes" | "stop";

export function tapInput(x: number, y: number): Record<string, unknown> {
  return { type: "input", kind: "tap", x, y };
}

export function tiltInput(x: number, y: number): Record<string, unknown> {
  return { type: "input", kind: "tilt", x, y };
}

export function keyInput(key: string): Record<string, unknown> {
  return { type: "input", kind: "key", key };
}

export function answerInput(id: number, text: string): Record<string, unknown> {
  return { type: "input", kind: "answer", id, text };
}

export function controlMessage(action: ControlAction): Record<string, unknown> {
  return { type: "control", action };
}

export function assetUrl(scene: string, object: string, look: string): string {
  const enc = encodeURIComponent;
  return `/assets/${enc(scene)}/${enc(object)}/${enc(look)}`;
}
