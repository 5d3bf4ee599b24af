import { StageView, canvasToStage, clamp } from "./coords.js";
import { ClientSession } from "./session.js";

// Device orientation -> tilt levels. gamma (roll, right side down
// positive) drives the x inclination, beta (pitch, top up positive)
// drives y; both clamp to the slider range so either input source lands
// in the same [-90, 90] the server expects.
export function mapOrientation(
  beta: number | null,
  gamma: number | null,
): { x: number; y: number } {
  return {
    x: clamp(gamma ?? 0, -90, 90),
    y: clamp(beta ?? 0, -90, 90),
  };
}

export interface InputElements {
  canvas: HTMLCanvasElement;
  tiltX: HTMLInputElement;
  tiltY: HTMLInputElement;
  motionButton: HTMLButtonElement;
  askBox: HTMLElement;
  askQuestion: HTMLElement;
  askText: HTMLInputElement;
  askSend: HTMLButtonElement;
}

// Taps map through the exact inverse of the render transform: canvas
// backing pixels (not CSS pixels) into stage coordinates.
function sendTap(session: ClientSession, els: InputElements, view: StageView, clientX: number, clientY: number): void {
  const rect = els.canvas.getBoundingClientRect();
  if (rect.width === 0 || rect.height === 0) return;
  const px = ((clientX - rect.left) * els.canvas.width) / rect.width;
  const py = ((clientY - rect.top) * els.canvas.height) / rect.height;
  const point = canvasToStage(view, px, py);
  session.sendTap(point.x, point.y);
}

function sendSliderTilt(session: ClientSession, els: InputElements): void {
  session.sendTilt(Number(els.tiltX.value), Number(els.tiltY.value));
}

function submitAnswer(session: ClientSession, els: InputElements): void {
  const ask = session.activeAsk();
  if (!ask) return;
  if (session.sendAnswer(ask.id, els.askText.value)) {
    els.askText.value = "";
  }
}

export function attachInput(
  session: ClientSession,
  els: InputElements,
  getView: () => StageView | null,
): void {
  els.canvas.addEventListener("pointerdown", (e) => {
    const view = getView();
    if (view) sendTap(session, els, view, e.clientX, e.clientY);
  });

  // Keyboard passes straight through; the runtime decides what a key
  // means. Repeats stay local, and typing an answer must not leak keys
  // into the game.
  window.addEventListener("keydown", (e) => {
    if (e.target === els.askText) return;
    if (e.repeat) return;
    if (e.key.startsWith("Arrow") || e.key === " ") e.preventDefault();
    session.sendKey(e.key);
  });

  for (const slider of [els.tiltX, els.tiltY]) {
    slider.addEventListener("input", () => sendSliderTilt(session, els));
    slider.addEventListener("dblclick", () => {
      slider.value = "0";
      sendSliderTilt(session, els);
    });
  }

  els.motionButton.addEventListener("click", () => {
    enableDeviceOrientation(session, els).catch(() => {
      els.motionButton.textContent = "motion unavailable";
    });
  });

  els.askSend.addEventListener("click", () => submitAnswer(session, els));
  els.askText.addEventListener("keydown", (e) => {
    if (e.key === "Enter") submitAnswer(session, els);
  });
}

// Opt-in: some platforms gate orientation events behind a permission
// prompt that must come from a user gesture, hence the button. Sliders
// keep working; orientation just moves them.
async function enableDeviceOrientation(session: ClientSession, els: InputElements): Promise<void> {
  const ctor = DeviceOrientationEvent as unknown as {
    requestPermission?: () => Promise<string>;
  };
  if (typeof ctor.requestPermission === "function") {
    const answer = await ctor.requestPermission();
    if (answer !== "granted") {
      els.motionButton.textContent = "motion denied";
      return;
    }
  }
  els.motionButton.disabled = true;
  els.motionButton.textContent = "motion on";
  let lastSent = 0;
  window.addEventListener("deviceorientation", (e) => {
    const now = Date.now();
    if (now - lastSent < 50) return;
    lastSent = now;
    const tilt = mapOrientation(e.beta, e.gamma);
    els.tiltX.value = String(Math.round(tilt.x));
    els.tiltY.value = String(Math.round(tilt.y));
    session.sendTilt(tilt.x, tilt.y);
  });
}
