import {
  ControlAction,
  FrameEvent,
  FrameMessage,
  HelloMessage,
  PROTOCOL_VERSION,
  PenSegment,
  PenStamp,
  answerInput,
  controlMessage,
  keyInput,
  parseServerMessage,
  tapInput,
  tiltInput,
} from "./protocol.js";
import { Bubble } from "./render.js";
import { clamp } from "./coords.js";

// The subset of WebSocket both the browser class and the ws package
// expose; tests inject fakes through makeSocket.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type SessionStatus = "idle" | "connecting" | "running" | "busy" | "closed";

export interface AskRequest {
  id: number;
  object: string;
  question: string;
}

export interface RenderWork {
  frame: FrameMessage;
  segments: PenSegment[];
  stamps: PenStamp[];
  penReset: boolean;
}

export interface SessionOptions {
  url: string;
  makeSocket?: (url: string) => SocketLike;
  // Side effects outside the canvas (haptics, sound markers). Optional;
  // headless tests leave it unset.
  onEffect?: (event: FrameEvent) => void;
  // Fires once per accepted frame, in arrival order. The render loop
  // polls takeRender() instead; this is for consumers without one.
  onFrame?: (frame: FrameMessage) => void;
}

// Client half of a gateway session. Holds everything the game does NOT
// own: the socket, the last accepted/rendered frame numbers, bubbles and
// ask prompts reconstructed from events, and the ink queue for the pen
// layer. All game state stays on the server; reconnecting just resumes
// the stream.
export class ClientSession {
  status: SessionStatus = "idle";
  hello: HelloMessage | null = null;
  lastError = "";
  frame: FrameMessage | null = null;
  seq = -1; // last accepted
  renderedSeq = -1; // last handed to the renderer
  bubbles = new Map<string, Bubble>();
  asks: AskRequest[] = [];
  tiltX = 0;
  tiltY = 0;

  private readonly url: string;
  private readonly makeSocket: (url: string) => SocketLike;
  private readonly onEffect?: (event: FrameEvent) => void;
  private readonly onFrame?: (frame: FrameMessage) => void;
  private socket: SocketLike | null = null;
  private outbox: Record<string, unknown>[] = [];
  private pendingRender = false;
  private penReset = false;
  private pendingSegments: PenSegment[] = [];
  private pendingStamps: PenStamp[] = [];
  private answered = new Set<number>();
  private gaps: number[] = []; // seq gaps of the last ~2s of arrivals

  constructor(options: SessionOptions) {
    this.url = options.url;
    this.makeSocket =
      options.makeSocket ?? ((url) => new WebSocket(url) as unknown as SocketLike);
    this.onEffect = options.onEffect;
    this.onFrame = options.onFrame;
  }

  connect(): void {
    if (this.status === "connecting" || this.status === "running") return;
    this.status = "connecting";
    this.lastError = "";
    this.hello = null;
    const socket = this.makeSocket(this.url);
    this.socket = socket;
    socket.onmessage = (ev) => {
      const text = typeof ev.data === "string" ? ev.data : String(ev.data);
      this.receive(text);
    };
    socket.onclose = () => {
      if (this.socket !== socket) return; // an old socket closing late
      this.socket = null;
      if (this.status !== "busy") this.status = "closed";
    };
    socket.onerror = () => {
      if (this.lastError === "") this.lastError = "connection error";
    };
  }

  close(): void {
    const socket = this.socket;
    this.socket = null;
    this.status = "closed";
    if (socket) socket.close();
  }

  // --- outgoing ---

  sendTap(x: number, y: number): void {
    this.send(tapInput(x, y));
  }

  sendTilt(x: number, y: number): void {
    this.tiltX = clamp(x, -90, 90);
    this.tiltY = clamp(y, -90, 90);
    this.send(tiltInput(this.tiltX, this.tiltY));
  }

  sendKey(key: string): void {
    this.send(keyInput(key));
  }

  // Each ask is answered at most once, no matter how often the submit
  // handler fires.
  sendAnswer(id: number, text: string): boolean {
    if (this.answered.has(id)) return false;
    this.answered.add(id);
    this.asks = this.asks.filter((ask) => ask.id !== id);
    this.send(answerInput(id, text));
    return true;
  }

  sendControl(action: ControlAction): void {
    this.send(controlMessage(action));
  }

  // Inputs must never reach the server before its hello; anything sent
  // early waits in the outbox and is flushed when the hello lands.
  private send(message: Record<string, unknown>): void {
    if (!this.socket || !this.hello) {
      this.outbox.push(message);
      return;
    }
    this.socket.send(JSON.stringify(message));
  }

  // --- incoming ---

  private receive(text: string): void {
    let message;
    try {
      message = parseServerMessage(text);
    } catch (err) {
      this.lastError = String(err instanceof Error ? err.message : err);
      return;
    }
    if (message.type === "hello") {
      if (message.protocol_version !== PROTOCOL_VERSION) {
        this.lastError = `server speaks protocol ${message.protocol_version}, expected ${PROTOCOL_VERSION}`;
        this.close();
        return;
      }
      this.hello = message;
      this.status = "running";
      const queued = this.outbox;
      this.outbox = [];
      for (const entry of queued) this.send(entry);
      return;
    }
    if (message.type === "error") {
      if (message.code === "session_busy") {
        this.status = "busy";
        this.lastError = message.text;
      } else {
        this.lastError = `${message.code}: ${message.text}`;
      }
      return;
    }
    this.acceptFrame(message);
  }

  private acceptFrame(frame: FrameMessage): void {
    if (this.seq >= 0) {
      if (frame.seq === this.seq) return; // duplicate, never re-render
      if (frame.seq < this.seq) {
        // The session restarted behind us; local accumulations describe
        // a run that no longer exists.
        this.resetRunState();
      } else {
        this.pushGap(frame.seq - this.seq - 1);
      }
    }
    this.seq = frame.seq;
    this.frame = frame;
    this.pendingRender = true;
    this.pendingSegments.push(...frame.pen_segments);
    this.pendingStamps.push(...frame.pen_stamps);
    for (const event of frame.events) this.applyEvent(event);
    if (this.onFrame) this.onFrame(frame);
  }

  private applyEvent(event: FrameEvent): void {
    if (event.type === "say" || event.type === "think") {
      const object = String(event.object ?? "");
      const text = String(event.text ?? "");
      if (text === "") this.bubbles.delete(object);
      else this.bubbles.set(object, { kind: event.type, text });
      return;
    }
    if (event.type === "ask") {
      this.asks.push({
        id: Number(event.id),
        object: String(event.object ?? ""),
        question: String(event.question ?? ""),
      });
      return;
    }
    if (this.onEffect) this.onEffect(event);
  }

  private resetRunState(): void {
    this.bubbles.clear();
    this.asks = [];
    this.answered.clear();
    this.pendingSegments = [];
    this.pendingStamps = [];
    this.penReset = true;
    this.gaps = [];
  }

  // --- render handoff ---

  // Returns work exactly once per accepted frame, holding the rendered
  // seq monotone between restarts.
  takeRender(): RenderWork | null {
    if (!this.pendingRender || !this.frame) return null;
    this.pendingRender = false;
    this.renderedSeq = this.frame.seq;
    const work: RenderWork = {
      frame: this.frame,
      segments: this.pendingSegments,
      stamps: this.pendingStamps,
      penReset: this.penReset,
    };
    this.pendingSegments = [];
    this.pendingStamps = [];
    this.penReset = false;
    return work;
  }

  activeAsk(): AskRequest | null {
    return this.asks.length ? this.asks[0] : null;
  }

  private pushGap(gap: number): void {
    this.gaps.push(gap);
    if (this.gaps.length > 120) this.gaps.shift();
  }

  // Frames the server produced but this client never saw, over the last
  // ~two seconds. 0 means the stream is keeping up.
  lag(): number {
    let total = 0;
    for (const gap of this.gaps) total += gap;
    return total;
  }
}

// Status line for the banner overlay; empty string means hide it.
export function bannerText(session: ClientSession): string {
  switch (session.status) {
    case "running":
      return "";
    case "idle":
    case "connecting":
      return "connecting…";
    case "busy":
      return "session busy: another player holds this stage";
    case "closed":
      return session.lastError ? `disconnected (${session.lastError})` : "disconnected";
  }
}
