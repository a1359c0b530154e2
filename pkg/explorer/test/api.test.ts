import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, auditDisplayed, FetchLike, numberInLog } from "../src/api.js";

function stubFetch(handler: (path: string, payload: any) => { status?: number; body: any }): FetchLike {
  return async (url, init) => {
    const path = new URL(url).pathname;
    const payload = init?.body ? JSON.parse(init.body as string) : null;
    const { status = 200, body } = handler(path, payload);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}

describe("ApiClient", () => {
  it("records every exchange in the session log", async () => {
    const api = new ApiClient(
      "http://service",
      stubFetch(() => ({ body: { ok: true, result: { points: [[1, 0, 0]] } } })),
    );
    await api.canonicalize("{0,1}", [1, 0.5, 0.25]);
    await api.canonicalize("{0,1}", [1, 0.1, 0.2]);
    expect(api.log).toHaveLength(2);
    expect(api.log[0].path).toBe("/apply");
    expect(api.log[1].seq).toBe(1);
  });

  it("raises ApiError with the kernel error code", async () => {
    const api = new ApiClient(
      "http://service",
      stubFetch(() => ({
        status: 422,
        body: { ok: false, error: { code: "out-of-domain", message: "nope" } },
      })),
    );
    await expect(api.measure("{1,1}", [[1, 0, 0]], [[0, 1, 0]])).rejects.toThrowError(ApiError);
    expect(api.log).toHaveLength(1); // failures are logged too
  });

  it("samples segments through /apply frames", async () => {
    const frames = [[[1, 0, 0]], [[1, 0.5, 0]], [[1, 1, 0]]];
    const api = new ApiClient(
      "http://service",
      stubFetch((path, payload) => {
        expect(path).toBe("/apply");
        expect(payload.motion.from).toEqual([1, 0, 0]);
        expect(payload.fractions).toHaveLength(3);
        return { body: { ok: true, result: { frames } } };
      }),
    );
    const samples = await api.segmentSamples("{0,1}", [1, 0, 0], [1, 1, 0], 2);
    expect(samples).toEqual([[1, 0, 0], [1, 0.5, 0], [1, 1, 0]]);
  });
});

describe("session log audit", () => {
  const log = [
    {
      seq: 0,
      method: "POST",
      path: "/measure",
      payload: null,
      status: 200,
      response: { ok: true, result: { value: 0.75, nested: [{ deep: 42 }] } },
    },
  ];

  it("finds numbers anywhere in logged responses", () => {
    expect(numberInLog(log, 0.75)).toBe(true);
    expect(numberInLog(log, 42)).toBe(true);
    expect(numberInLog(log, 0.750001)).toBe(false);
  });

  it("flags numbers that never came from the service", () => {
    expect(auditDisplayed(log, [0.75, 42])).toEqual([]);
    expect(auditDisplayed(log, [0.75, 1.23])).toEqual([1.23]);
  });
});
