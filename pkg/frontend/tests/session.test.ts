import { describe, expect, it } from "vitest";
import { mapOrientation } from "../src/input.js";
import { ClientSession, bannerText } from "../src/session.js";
import { FakeSocket, frameStub, helloStub } from "./helpers.js";

function connected(): { session: ClientSession; socket: FakeSocket } {
  const socket = new FakeSocket();
  const session = new ClientSession({ url: "ws://test/ws", makeSocket: () => socket });
  session.connect();
  return { session, socket };
}

describe("handshake", () => {
  it("holds every input back until the hello arrives", () => {
    const { session, socket } = connected();
    session.sendTap(10, 20);
    session.sendControl("pause");
    expect(socket.sent).toEqual([]);

    socket.serverSends(helloStub);
    expect(session.status).toBe("running");
    const kinds = socket.sentJson().map((m) => m.kind ?? m.action);
    expect(kinds).toEqual(["tap", "pause"]);
  });

  it("announces the stage size", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    expect(session.hello?.stage_width).toBe(480);
    expect(session.hello?.stage_height).toBe(360);
  });

  it("refuses a server speaking another protocol version", () => {
    const { session, socket } = connected();
    socket.serverSends({ ...helloStub, protocol_version: 2 });
    expect(session.status).toBe("closed");
    expect(session.lastError).toContain("protocol");
  });

  it("shows the busy banner when the slot is taken, and keeps it after the close", () => {
    const { session, socket } = connected();
    socket.serverSends({ type: "error", code: "session_busy", text: "session busy" });
    expect(session.status).toBe("busy");
    expect(bannerText(session)).toContain("busy");
    socket.serverCloses();
    expect(session.status).toBe("busy");
  });
});

describe("frame acceptance", () => {
  it("hands each frame to the renderer exactly once", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    socket.serverSends(frameStub(0));
    const first = session.takeRender();
    expect(first?.frame.seq).toBe(0);
    expect(session.takeRender()).toBeNull();
    socket.serverSends(frameStub(1));
    expect(session.takeRender()?.frame.seq).toBe(1);
  });

  it("never renders a stale or duplicate seq", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    socket.serverSends(frameStub(5));
    session.takeRender();
    socket.serverSends(frameStub(5)); // duplicate
    expect(session.takeRender()).toBeNull();
    expect(session.renderedSeq).toBe(5);
  });

  it("treats a seq rewind as a restart and wipes run-local state", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    socket.serverSends(
      frameStub(8, { events: [{ type: "say", object: "cat", text: "hi" }] }),
    );
    session.takeRender();
    expect(session.bubbles.get("cat")?.text).toBe("hi");

    socket.serverSends(frameStub(0));
    const work = session.takeRender();
    expect(work?.penReset).toBe(true);
    expect(session.bubbles.size).toBe(0);
    expect(session.seq).toBe(0);
  });

  it("counts skipped frames as lag", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    socket.serverSends(frameStub(0));
    socket.serverSends(frameStub(1));
    expect(session.lag()).toBe(0);
    socket.serverSends(frameStub(5)); // 2, 3, 4 never arrived
    expect(session.lag()).toBe(3);
  });

  it("carries ink from skipped renders forward instead of dropping it", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    const seg = (n: number) => ({ x1: n, y1: 0, x2: n, y2: 1, size: 1, color: [0, 0, 0] });
    socket.serverSends(frameStub(0, { pen_segments: [seg(1)] }));
    socket.serverSends(frameStub(1, { pen_segments: [seg(2)] }));
    const work = session.takeRender();
    expect(work?.frame.seq).toBe(1);
    expect(work?.segments.map((s) => s.x1)).toEqual([1, 2]);
  });
});

describe("speech and asks", () => {
  it("clears a bubble when the text goes empty", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    socket.serverSends(frameStub(0, { events: [{ type: "think", object: "cat", text: "hm" }] }));
    expect(session.bubbles.get("cat")?.kind).toBe("think");
    socket.serverSends(frameStub(1, { events: [{ type: "think", object: "cat", text: "" }] }));
    expect(session.bubbles.has("cat")).toBe(false);
  });

  it("answers an ask exactly once", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    socket.serverSends(
      frameStub(0, { events: [{ type: "ask", id: 3, object: "cat", question: "name?" }] }),
    );
    expect(session.activeAsk()?.question).toBe("name?");
    expect(session.sendAnswer(3, "ada")).toBe(true);
    expect(session.sendAnswer(3, "ada")).toBe(false);
    const answers = socket.sentJson().filter((m) => m.kind === "answer");
    expect(answers).toHaveLength(1);
    expect(answers[0]).toMatchObject({ id: 3, text: "ada" });
    expect(session.activeAsk()).toBeNull();
  });
});

describe("tilt", () => {
  it("clamps to the slider range before sending", () => {
    const { session, socket } = connected();
    socket.serverSends(helloStub);
    session.sendTilt(500, -500);
    expect(session.tiltX).toBe(90);
    expect(session.tiltY).toBe(-90);
    expect(socket.sentJson().at(-1)).toMatchObject({ kind: "tilt", x: 90, y: -90 });
  });

  it("maps device orientation into the same range", () => {
    expect(mapOrientation(120, -30)).toEqual({ x: -30, y: 90 });
    expect(mapOrientation(null, null)).toEqual({ x: 0, y: 0 });
    expect(mapOrientation(-200, 95)).toEqual({ x: 90, y: -90 });
  });
});
