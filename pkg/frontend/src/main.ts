import { AssetCache } from "./assets.js";
import { StageView, fitStage } from "./coords.js";
import { InputElements, attachInput } from "./input.js";
import { ControlAction, FrameEvent } from "./protocol.js";
import { PenLayer, renderFrame } from "./render.js";
import { ClientSession, bannerText } from "./session.js";

function grab<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const canvas = grab<HTMLCanvasElement>("stage");
const ctx = canvas.getContext("2d");
if (!ctx) throw new Error("2d canvas not available");

const els: InputElements = {
  canvas,
  tiltX: grab<HTMLInputElement>("tilt-x"),
  tiltY: grab<HTMLInputElement>("tilt-y"),
  motionButton: grab<HTMLButtonElement>("motion"),
  askBox: grab("ask-box"),
  askQuestion: grab("ask-question"),
  askText: grab<HTMLInputElement>("ask-text"),
  askSend: grab<HTMLButtonElement>("ask-send"),
};
const banner = grab("banner");
const hudProject = grab("project-name");
const hudSeq = grab("seq");
const hudLag = grab("lag");
const tiltXReadout = grab("tilt-x-value");
const tiltYReadout = grab("tilt-y-value");

function onEffect(event: FrameEvent): void {
  if (event.type === "haptic" && navigator.vibrate) {
    navigator.vibrate(Math.max(1, Math.round(Number(event.duration) * 1000)));
  }
}

const session = new ClientSession({
  url: `ws://${window.location.host}/ws`,
  onEffect,
});
const sheet = new AssetCache();
const pen = new PenLayer();

let view: StageView | null = null;

attachInput(session, els, () => view);

for (const action of ["start", "pause", "resume", "restart", "stop"] as ControlAction[]) {
  grab<HTMLButtonElement>(`btn-${action}`).addEventListener("click", () => session.sendControl(action));
}
grab<HTMLButtonElement>("btn-axes").addEventListener("click", () => session.sendControl("toggle_axes"));
grab<HTMLButtonElement>("btn-retry").addEventListener("click", () => session.connect());

session.connect();

// The server holds the session slot until a client disconnects, so a
// plain drop can be rejoined immediately; a busy slot is someone else's
// and retrying automatically would just hammer it.
setInterval(() => {
  if (session.status === "closed") session.connect();
}, 1500);

function syncHud(): void {
  const text = bannerText(session);
  banner.textContent = text;
  banner.style.display = text ? "block" : "none";
  grab<HTMLButtonElement>("btn-retry").style.display = session.status === "busy" ? "inline-block" : "none";

  if (session.hello) hudProject.textContent = session.hello.project_name;
  hudSeq.textContent = session.seq >= 0 ? String(session.seq) : "-";
  const lag = session.lag();
  hudLag.textContent = lag > 0 ? `lag ${lag}` : "live";
  hudLag.className = lag > 0 ? "lagging" : "live";
  tiltXReadout.textContent = els.tiltX.value;
  tiltYReadout.textContent = els.tiltY.value;

  const ask = session.activeAsk();
  if (ask) {
    els.askBox.style.display = "block";
    els.askQuestion.textContent = ask.object ? `${ask.object}: ${ask.question}` : ask.question;
  } else {
    els.askBox.style.display = "none";
  }
}

function tick(): void {
  if (session.hello && (canvas.width !== session.hello.stage_width || canvas.height !== session.hello.stage_height)) {
    canvas.width = session.hello.stage_width;
    canvas.height = session.hello.stage_height;
    view = fitStage(canvas.width, canvas.height, session.hello.stage_width, session.hello.stage_height);
  }
  const work = session.takeRender();
  if (work && view && ctx) {
    if (work.penReset) pen.clear();
    renderFrame(ctx, work.frame, view, sheet, pen, session.bubbles, work.segments, work.stamps);
  }
  syncHud();
  requestAnimationFrame(tick);
}

requestAnimationFrame(tick);
