// Scene state: the plane, labeled points, segments, selections and the
// measure readout. All geometric values come from the service; the
// revision counter discards responses that arrive after a newer edit.

import { ApiClient, ConnectResult, Json, MeasureResult, OrbitResult } from "./api.js";
import { PlaneInfo } from "./planes.js";

export interface ScenePoint {
  id: number;
  label: string;
  coords: number[];
}

export interface SceneSegment {
  id: number;
  label: string;
  ends: [number, number]; // point ids
  samples: number[][]; // service-sampled geodesic points
  connect: ConnectResult;
}

export type ElementRef = { kind: "point" | "segment"; id: number };

export interface Readout {
  measure: MeasureResult | null;
  connect: ConnectResult | null;
  between: [string, string];
}

export interface TilingOverlay {
  p: number;
  q: number;
  depth: number;
  orbit: OrbitResult;
}

const SLIDER_FRACTIONS = Array.from({ length: 11 }, (_, i) => i / 10);

export class Scene {
  points: ScenePoint[] = [];
  segments: SceneSegment[] = [];
  selection: ElementRef[] = [];
  readout: Readout | null = null;
  tiling: TilingOverlay | null = null;
  revision = 0;
  private nextId = 1;

  constructor(public api: ApiClient, public plane: PlaneInfo) {}

  private bump(): number {
    this.revision += 1;
    return this.revision;
  }

  private fresh(revision: number): boolean {
    return revision === this.revision;
  }

  point(id: number): ScenePoint {
    const hit = this.points.find((p) => p.id === id);
    if (!hit) throw new Error(`no point ${id}`);
    return hit;
  }

  segment(id: number): SceneSegment {
    const hit = this.segments.find((s) => s.id === id);
    if (!hit) throw new Error(`no segment ${id}`);
    return hit;
  }

  /** Reset everything for a new plane (caller confirms with the user). */
  switchPlane(plane: PlaneInfo): void {
    this.bump();
    this.plane = plane;
    this.points = [];
    this.segments = [];
    this.selection = [];
    this.readout = null;
    this.tiling = null;
  }

  /** Add the chart point (u, v); the service canonicalizes it. */
  async addPointAtChart(u: number, v: number): Promise<ScenePoint | null> {
    const revision = this.bump();
    const coords = await this.api.canonicalize(this.plane.sig, [1, u, v]);
    if (!this.fresh(revision)) return null;
    const point: ScenePoint = {
      id: this.nextId++,
      label: String.fromCharCode(64 + (this.points.length % 26) + 1),
      coords,
    };
    this.points.push(point);
    return point;
  }

  private basisOf(ref: ElementRef): number[][] {
    if (ref.kind === "point") return [this.point(ref.id).coords];
    const seg = this.segment(ref.id);
    return [this.point(seg.ends[0]).coords, this.point(seg.ends[1]).coords];
  }

  private labelOf(ref: ElementRef): string {
    return ref.kind === "point" ? this.point(ref.id).label : this.segment(ref.id).label;
  }

  /** Toggle selection; with two elements selected, fetch the measure. */
  async select(ref: ElementRef): Promise<void> {
    const already = this.selection.findIndex((r) => r.kind === ref.kind && r.id === ref.id);
    if (already >= 0) {
      this.selection.splice(already, 1);
      this.readout = null;
      return;
    }
    this.selection.push(ref);
    if (this.selection.length > 2) this.selection.shift();
    if (this.selection.length === 2) await this.refreshReadout();
  }

  async refreshReadout(): Promise<void> {
    if (this.selection.length !== 2) {
      this.readout = null;
      return;
    }
    const revision = this.revision;
    const [ra, rb] = this.selection;
    const measure = await this.api.measure(this.plane.sig, this.basisOf(ra), this.basisOf(rb));
    let connect: ConnectResult | null = null;
    if (ra.kind === "point" && rb.kind === "point") {
      connect = await this.api.connectable(
        this.plane.sig,
        this.point(ra.id).coords,
        this.point(rb.id).coords,
      );
    }
    if (!this.fresh(revision)) return;
    this.readout = { measure, connect, between: [this.labelOf(ra), this.labelOf(rb)] };
  }

  /** Join two selected points into a segment (a piece of their line). */
  async joinSelection(): Promise<SceneSegment | null> {
    if (this.selection.length !== 2) return null;
    const [ra, rb] = this.selection;
    if (ra.kind !== "point" || rb.kind !== "point") return null;
    const a = this.point(ra.id);
    const b = this.point(rb.id);
    const revision = this.bump();
    const connect = await this.api.connectable(this.plane.sig, a.coords, b.coords);
    let samples: number[][] = [a.coords, b.coords];
    if (connect.kind === "connectable") {
      samples = await this.api.segmentSamples(this.plane.sig, a.coords, b.coords);
    }
    if (!this.fresh(revision)) return null;
    const segment: SceneSegment = {
      id: this.nextId++,
      label: `${a.label}${b.label}`,
      ends: [a.id, b.id],
      samples,
      connect,
    };
    this.segments.push(segment);
    return segment;
  }

  async setTiling(p: number, q: number, depth: number): Promise<void> {
    const revision = this.bump();
    const orbit = await this.api.tiling(p, q, depth);
    if (!this.fresh(revision)) return;
    this.tiling = { p, q, depth, orbit };
  }

  clearTiling(): void {
    this.bump();
    this.tiling = null;
  }

  /**
   * Apply a main rotation to the whole scene, animating through the
   * service-interpolated frames; resolves with the frames it rendered.
   */
  async applySlider(
    axis: 1 | 2,
    angle: number,
    onFrame?: (points: number[][]) => void,
  ): Promise<number[][][] | null> {
    if (this.points.length === 0) return null;
    const revision = this.bump();
    const coords = this.points.map((p) => p.coords);
    const frames = await this.api.applyFrames(
      this.plane.sig,
      { axis, angle },
      coords,
      SLIDER_FRACTIONS,
    );
    if (!this.fresh(revision)) return null;
    for (const frame of frames) onFrame?.(frame);
    const final = frames[frames.length - 1];
    this.points.forEach((p, i) => (p.coords = final[i]));
    for (const seg of this.segments) {
      const a = this.point(seg.ends[0]);
      const b = this.point(seg.ends[1]);
      if (seg.connect.kind === "connectable") {
        seg.samples = await this.api.segmentSamples(this.plane.sig, a.coords, b.coords);
      } else {
        seg.samples = [a.coords, b.coords];
      }
    }
    if (this.selection.length === 2) await this.refreshReadout();
    return frames;
  }

  /** Numbers currently on screen; used by the session-log audit. */
  displayedNumbers(): number[] {
    const out: number[] = [];
    const push = (v: number | "inf" | null | undefined) => {
      if (typeof v === "number") out.push(v);
    };
    if (this.readout?.measure) {
      push(this.readout.measure.value);
      push(this.readout.measure.complementary);
    }
    if (this.readout?.connect?.distance) push(this.readout.connect.distance.value);
    if (this.tiling) {
      push(this.tiling.orbit.min_distance);
    }
    return out;
  }

  exportJson(): Json {
    return {
      plane: this.plane.sig,
      points: this.points.map((p) => ({ id: p.id, label: p.label, coords: p.coords })),
      segments: this.segments.map((s) => ({ id: s.id, label: s.label, ends: s.ends })),
      tiling: this.tiling ? { p: this.tiling.p, q: this.tiling.q, depth: this.tiling.depth } : null,
    } as unknown as Json;
  }

  async importJson(data: {
    plane: string;
    points: { id: number; label: string; coords: number[] }[];
    segments: { id: number; label: string; ends: [number, number] }[];
    tiling: { p: number; q: number; depth: number } | null;
  }, plane: PlaneInfo): Promise<void> {
    this.switchPlane(plane);
    for (const p of data.points) {
      const coords = await this.api.canonicalize(plane.sig, p.coords);
      this.points.push({ id: p.id, label: p.label, coords });
      this.nextId = Math.max(this.nextId, p.id + 1);
    }
    for (const s of data.segments) {
      const a = this.point(s.ends[0]);
      const b = this.point(s.ends[1]);
      const connect = await this.api.connectable(plane.sig, a.coords, b.coords);
      const samples =
        connect.kind === "connectable"
          ? await this.api.segmentSamples(plane.sig, a.coords, b.coords)
          : [a.coords, b.coords];
      this.segments.push({ id: s.id, label: s.label, ends: s.ends, samples, connect });
      this.nextId = Math.max(this.nextId, s.id + 1);
    }
    if (data.tiling) await this.setTiling(data.tiling.p, data.tiling.q, data.tiling.depth);
  }
}

/** Fixed display precision: formatting only, never arithmetic. */
export function fmt(value: number | "inf" | null | undefined): string {
  if (value === null || value === undefined) return "—";
  if (value === "inf") return "∞";
  return Number(value).toPrecision(6);
}
