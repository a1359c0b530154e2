import { describe, expect, it } from "vitest";

import { ApiClient, auditDisplayed, FetchLike } from "../src/api.js";
import { planeBySig } from "../src/planes.js";
import { fmt, Scene } from "../src/scene.js";

// A canned service: canonicalization echoes points, measures return a
// fixed payload, segment frames interpolate linearly. Numbers here are
// arbitrary; the tests check plumbing, not geometry.
const MEASURE = { value: 0.7853981633974483, type: 1, complementary: 0.7853981633974483, case: "c", ambiguous: false };
const ORBIT = {
  nodes: [[1, 0, 0], [1, 2, 0], [1, 0, 2]],
  edges: [[0, 1], [0, 2]],
  min_distance: 2.0,
  sig: "{0,1}",
};

function cannedService(): FetchLike {
  return async (url, init) => {
    const path = new URL(url).pathname;
    const payload = init?.body ? JSON.parse(init.body as string) : {};
    let result: unknown;
    if (path === "/apply" && payload.fractions) {
      const [from] = payload.points;
      result = { frames: payload.fractions.map((p: number) => [from.map((c: number) => c + p)]) };
    } else if (path === "/apply") {
      result = { points: payload.points };
    } else if (path === "/measure") {
      result = MEASURE;
    } else if (path === "/connectable") {
      result = { kind: "connectable", distance: MEASURE };
    } else if (path === "/tiling") {
      result = ORBIT;
    } else {
      return new Response(JSON.stringify({ ok: false, error: { code: "not-found", message: path } }), { status: 404 });
    }
    return new Response(JSON.stringify({ ok: true, result }), { status: 200 });
  };
}

function makeScene(): Scene {
  const api = new ApiClient("http://service", cannedService());
  return new Scene(api, planeBySig("{0,1}"));
}

describe("Scene", () => {
  it("adds service-canonicalized points with labels", async () => {
    const scene = makeScene();
    const p = await scene.addPointAtChart(0.5, 0.25);
    expect(p?.label).toBe("A");
    expect(p?.coords).toEqual([1, 0.5, 0.25]);
    expect(scene.api.log[0].path).toBe("/apply");
  });

  it("shows the measure exactly as the service returned it", async () => {
    const scene = makeScene();
    const a = (await scene.addPointAtChart(0, 0))!;
    const b = (await scene.addPointAtChart(1, 0))!;
    await scene.select({ kind: "point", id: a.id });
    await scene.select({ kind: "point", id: b.id });
    expect(scene.readout?.measure?.value).toBe(MEASURE.value);
    expect(scene.readout?.connect?.kind).toBe("connectable");
    // the readout survives the audit: nothing was computed locally
    expect(auditDisplayed(scene.api.log, scene.displayedNumbers())).toEqual([]);
  });

  it("keeps at most two selections and refreshes the readout", async () => {
    const scene = makeScene();
    const ids = [];
    for (let i = 0; i < 3; i++) ids.push((await scene.addPointAtChart(i, 0))!.id);
    for (const id of ids) await scene.select({ kind: "point", id });
    expect(scene.selection).toHaveLength(2);
    expect(scene.selection[0].id).toBe(ids[1]);
  });

  it("joins selected points into a sampled segment", async () => {
    const scene = makeScene();
    const a = (await scene.addPointAtChart(0, 0))!;
    const b = (await scene.addPointAtChart(1, 0))!;
    await scene.select({ kind: "point", id: a.id });
    await scene.select({ kind: "point", id: b.id });
    const seg = await scene.joinSelection();
    expect(seg?.label).toBe("AB");
    expect(seg?.samples.length).toBeGreaterThan(2);
    expect(seg?.connect.kind).toBe("connectable");
  });

  it("stores tiling counts straight from the service", async () => {
    const scene = makeScene();
    await scene.setTiling(4, 4, 2);
    expect(scene.tiling?.orbit.nodes).toHaveLength(ORBIT.nodes.length);
    expect(scene.tiling?.orbit.edges).toHaveLength(ORBIT.edges.length);
    expect(scene.tiling?.orbit.min_distance).toBe(2.0);
  });

  it("slider animation renders every frame then commits the last", async () => {
    const scene = makeScene();
    const p = (await scene.addPointAtChart(0, 0))!;
    const seen: number[][][] = [];
    await scene.applySlider(1, 0.5, (frame) => seen.push(frame));
    expect(seen).toHaveLength(11);
    expect(p.coords).toEqual(seen[10][0]);
  });

  it("discards responses that lost a revision race", async () => {
    const scene = makeScene();
    const slow = scene.addPointAtChart(0, 0);
    scene.switchPlane(planeBySig("{-1,1}")); // bumps the revision mid-flight
    const result = await slow;
    expect(result).toBeNull();
    expect(scene.points).toHaveLength(0);
  });

  it("round-trips scene export and import", async () => {
    const scene = makeScene();
    const a = (await scene.addPointAtChart(0, 0))!;
    const b = (await scene.addPointAtChart(1, 1))!;
    await scene.select({ kind: "point", id: a.id });
    await scene.select({ kind: "point", id: b.id });
    await scene.joinSelection();
    const data = scene.exportJson() as any;
    const restored = makeScene();
    await restored.importJson(data, planeBySig(data.plane));
    expect(restored.points).toHaveLength(2);
    expect(restored.segments).toHaveLength(1);
    expect(restored.points[0].coords).toEqual(a.coords);
  });
});

describe("fmt", () => {
  it("formats at fixed display precision without arithmetic", () => {
    expect(fmt(0.123456789)).toBe("0.123457");
    expect(fmt("inf")).toBe("∞");
    expect(fmt(null)).toBe("—");
  });
});
