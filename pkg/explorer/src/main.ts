// DOM wiring: plane selector, canvas interactions, measure readout,
// motion sliders and the tiling overlay.

import { ApiClient } from "./api.js";
import { PLANES, planeBySig } from "./planes.js";
import { chartOf, hitTest, render, Viewport } from "./render.js";
import { fmt, Scene } from "./scene.js";

const api = new ApiClient(
  (window as unknown as { HOMSPACE_URL?: string }).HOMSPACE_URL ?? "http://127.0.0.1:7321",
);
const scene = new Scene(api, PLANES[1]); // Euclidean to start

const canvas = document.getElementById("chart") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const view: Viewport = { scale: 120, cx: canvas.width / 2, cy: canvas.height / 2 };

const planeSelect = document.getElementById("plane") as HTMLSelectElement;
const readoutBox = document.getElementById("readout")!;
const statusBox = document.getElementById("status")!;
const angle1 = document.getElementById("angle1") as HTMLInputElement;
const angle2 = document.getElementById("angle2") as HTMLInputElement;

for (const plane of PLANES) {
  const option = document.createElement("option");
  option.value = plane.sig;
  option.textContent = `${plane.name}  ${plane.sig}`;
  planeSelect.appendChild(option);
}
planeSelect.value = scene.plane.sig;

function redraw(): void {
  render(ctx, scene, view);
  renderReadout();
}

function renderReadout(): void {
  if (!scene.readout) {
    readoutBox.textContent = "select two elements to measure";
    return;
  }
  const { measure, connect, between } = scene.readout;
  const lines = [`${between[0]} — ${between[1]}`];
  if (measure) {
    lines.push(`value ${fmt(measure.value)}  type ${measure.type ?? "ambiguous"}`);
    lines.push(`case (${measure.case})${measure.ambiguous ? " ambiguous" : ""}`);
    if (measure.complementary !== null) {
      lines.push(`complementary ${fmt(measure.complementary)}`);
    }
  }
  if (connect) lines.push(`points are ${connect.kind}`);
  readoutBox.innerHTML = lines.map((l) => `<div>${l}</div>`).join("");
}

function toast(message: string): void {
  statusBox.textContent = message;
  window.setTimeout(() => {
    if (statusBox.textContent === message) statusBox.textContent = "";
  }, 4000);
}

async function guard<T>(work: Promise<T>): Promise<T | null> {
  try {
    return await work;
  } catch (err) {
    toast(String(err));
    return null;
  }
}

canvas.addEventListener("click", async (ev) => {
  const rect = canvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  const hit = hitTest(scene, view, px, py);
  if (hit !== null) {
    await guard(scene.select({ kind: "point", id: hit }));
  } else {
    const u = (px - view.cx) / view.scale;
    const v = (view.cy - py) / view.scale;
    await guard(scene.addPointAtChart(u, v));
  }
  redraw();
});

planeSelect.addEventListener("change", () => {
  if (scene.points.length > 0 && !window.confirm("Switching the plane clears the scene. Continue?")) {
    planeSelect.value = scene.plane.sig;
    return;
  }
  scene.switchPlane(planeBySig(planeSelect.value));
  redraw();
});

document.getElementById("join")!.addEventListener("click", async () => {
  const segment = await guard(scene.joinSelection());
  if (segment === null) toast("select two points first");
  redraw();
});

for (const [axis, slider] of [[1, angle1] as const, [2, angle2] as const]) {
  slider.addEventListener("change", async () => {
    const angle = Number(slider.value);
    if (!angle) return;
    await guard(
      scene.applySlider(axis, angle, (frame) => {
        // frame-by-frame preview: temporarily draw moved points
        const saved = scene.points.map((p) => p.coords);
        scene.points.forEach((p, i) => (p.coords = frame[i]));
        render(ctx, scene, view);
        scene.points.forEach((p, i) => (p.coords = saved[i]));
      }),
    );
    slider.value = "0";
    redraw();
  });
}

document.getElementById("tile")!.addEventListener("click", async () => {
  const p = Number((document.getElementById("tile-p") as HTMLInputElement).value);
  const q = Number((document.getElementById("tile-q") as HTMLInputElement).value);
  const depth = Number((document.getElementById("tile-depth") as HTMLInputElement).value);
  const ok = await guard(scene.setTiling(p, q, depth));
  if (ok !== null && scene.tiling) {
    const { nodes, edges, min_distance } = scene.tiling.orbit;
    toast(
      `tiling: ${nodes.length} nodes, ${edges.length} edges, min distance ${fmt(min_distance)}`,
    );
  }
  redraw();
});

document.getElementById("clear-tiling")!.addEventListener("click", () => {
  scene.clearTiling();
  redraw();
});

document.getElementById("export")!.addEventListener("click", () => {
  const blob = new Blob([JSON.stringify(scene.exportJson(), null, 2)], {
    type: "application/json",
  });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "scene.json";
  a.click();
});

(document.getElementById("import") as HTMLInputElement).addEventListener("change", async (ev) => {
  const file = (ev.target as HTMLInputElement).files?.[0];
  if (!file) return;
  const data = JSON.parse(await file.text());
  await guard(scene.importJson(data, planeBySig(data.plane)));
  planeSelect.value = scene.plane.sig;
  redraw();
});

void chartOf; // referenced by render; kept for module liveness
redraw();
