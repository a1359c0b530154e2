// Canvas renderer. Chart: central projection (x1/x0, x2/x0) on the
// x0 > 0 sheet; points near x0 = 0 get an off-chart marker at the rim.

import { hasLimitDirections } from "./planes.js";
import { Scene } from "./scene.js";

export interface Viewport {
  scale: number; // pixels per chart unit
  cx: number;
  cy: number;
}

const EPS = 1e-9;

export function chartOf(coords: number[]): [number, number] | null {
  const [x0, x1, x2] = coords;
  if (Math.abs(x0) <= EPS) return null;
  return [x1 / x0, x2 / x0];
}

export function toPixels(chart: [number, number], view: Viewport): [number, number] {
  return [view.cx + chart[0] * view.scale, view.cy - chart[1] * view.scale];
}

/** Clamp an off-chart direction marker to the canvas rim. */
function rimMarker(coords: number[], view: Viewport, w: number, h: number): [number, number] {
  const [, x1, x2] = coords;
  const norm = Math.hypot(x1, x2) || 1;
  const r = Math.min(w, h) / 2 - 8;
  return [view.cx + (x1 / norm) * r, view.cy - (x2 / norm) * r];
}

export function render(ctx: CanvasRenderingContext2D, scene: Scene, view: Viewport): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#fafafa";
  ctx.fillRect(0, 0, width, height);
  drawGrid(ctx, view, width, height);

  if (hasLimitDirections(scene.plane)) drawLimitGuides(ctx, view, width, height);

  if (scene.tiling) {
    const { nodes, edges } = scene.tiling.orbit;
    ctx.strokeStyle = "#c8b8e8";
    ctx.lineWidth = 1;
    for (const [i, j] of edges) {
      const a = chartOf(nodes[i]);
      const b = chartOf(nodes[j]);
      if (!a || !b) continue;
      line(ctx, toPixels(a, view), toPixels(b, view));
    }
    ctx.fillStyle = "#7a5ccc";
    for (const node of nodes) {
      const c = chartOf(node);
      if (!c) continue;
      dot(ctx, toPixels(c, view), 3);
    }
  }

  for (const seg of scene.segments) {
    const selected = scene.selection.some((r) => r.kind === "segment" && r.id === seg.id);
    ctx.strokeStyle = selected ? "#d3441c" : "#1f6feb";
    ctx.lineWidth = selected ? 2.5 : 1.5;
    ctx.setLineDash(seg.connect.kind === "connectable" ? [] : [6, 5]);
    ctx.beginPath();
    let started = false;
    for (const sample of seg.samples) {
      const c = chartOf(sample);
      if (!c) continue;
      const [px, py] = toPixels(c, view);
      if (started) ctx.lineTo(px, py);
      else ctx.moveTo(px, py);
      started = true;
    }
    ctx.stroke();
    ctx.setLineDash([]);
    if (seg.connect.kind !== "connectable") {
      const a = chartOf(scene.point(seg.ends[0]).coords);
      if (a) {
        const [px, py] = toPixels(a, view);
        ctx.fillStyle = "#d3441c";
        ctx.font = "11px sans-serif";
        ctx.fillText(seg.connect.kind === "limit" ? "limit" : "unconnectable", px + 8, py - 8);
      }
    }
  }

  for (const point of scene.points) {
    const selected = scene.selection.some((r) => r.kind === "point" && r.id === point.id);
    const c = chartOf(point.coords);
    const [px, py] = c ? toPixels(c, view) : rimMarker(point.coords, view, width, height);
    ctx.fillStyle = selected ? "#d3441c" : "#111";
    dot(ctx, [px, py], selected ? 6 : 4.5);
    if (!c) {
      ctx.strokeStyle = "#d3441c";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.arc(px, py, 9, 0, 2 * Math.PI);
      ctx.stroke();
    }
    ctx.fillStyle = "#333";
    ctx.font = "13px sans-serif";
    ctx.fillText(point.label, px + 7, py - 7);
  }
}

function drawGrid(ctx: CanvasRenderingContext2D, view: Viewport, w: number, h: number): void {
  ctx.strokeStyle = "#e3e3e3";
  ctx.lineWidth = 1;
  const step = view.scale;
  for (let x = view.cx % step; x < w; x += step) line(ctx, [x, 0], [x, h]);
  for (let y = view.cy % step; y < h; y += step) line(ctx, [0, y], [w, y]);
  ctx.strokeStyle = "#bbb";
  line(ctx, [0, view.cy], [w, view.cy]);
  line(ctx, [view.cx, 0], [view.cx, h]);
}

/** Asymptote guides of the limit directions through the chart origin. */
function drawLimitGuides(ctx: CanvasRenderingContext2D, view: Viewport, w: number, h: number): void {
  ctx.strokeStyle = "#e8c2a0";
  ctx.lineWidth = 1;
  ctx.setLineDash([4, 4]);
  const r = Math.max(w, h);
  line(ctx, [view.cx - r, view.cy + r], [view.cx + r, view.cy - r]);
  line(ctx, [view.cx - r, view.cy - r], [view.cx + r, view.cy + r]);
  ctx.setLineDash([]);
}

function line(ctx: CanvasRenderingContext2D, a: [number, number], b: [number, number]): void {
  ctx.beginPath();
  ctx.moveTo(a[0], a[1]);
  ctx.lineTo(b[0], b[1]);
  ctx.stroke();
}

function dot(ctx: CanvasRenderingContext2D, p: [number, number], r: number): void {
  ctx.beginPath();
  ctx.arc(p[0], p[1], r, 0, 2 * Math.PI);
  ctx.fill();
}

/** Nearest scene point to a canvas position, within a pixel radius. */
export function hitTest(scene: Scene, view: Viewport, px: number, py: number, radius = 10): number | null {
  let best: number | null = null;
  let bestDist = radius;
  for (const point of scene.points) {
    const c = chartOf(point.coords);
    if (!c) continue;
    const [qx, qy] = toPixels(c, view);
    const d = Math.hypot(px - qx, py - qy);
    if (d < bestDist) {
      bestDist = d;
      best = point.id;
    }
  }
  return best;
}
