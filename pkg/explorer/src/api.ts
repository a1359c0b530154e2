// Service client. Every geometric number shown in the UI passes through
// here, and every exchange is appended to the session log so tests can
// audit that nothing was computed locally.

export type Json = null | boolean | number | string | Json[] | { [k: string]: Json };

export interface LogEntry {
  seq: number;
  method: string;
  path: string;
  payload: Json;
  status: number;
  response: Json;
}

export interface MeasureResult {
  value: number | "inf" | null;
  type: number | null;
  complementary: number | "inf" | null;
  case: string;
  ambiguous: boolean;
}

export interface ConnectResult {
  kind: "connectable" | "unconnectable" | "limit";
  distance: MeasureResult | null;
}

export interface OrbitResult {
  nodes: number[][];
  edges: [number, number][];
  min_distance: number | null;
  sig: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public code: string, message: string) {
    super(message);
  }
}

export class ApiClient {
  log: LogEntry[] = [];
  private seq = 0;

  constructor(
    public baseUrl: string = "http://127.0.0.1:7321",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private record(method: string, path: string, payload: Json, status: number, response: Json) {
    this.log.push({ seq: this.seq++, method, path, payload, status, response });
  }

  async post(path: string, payload: Json): Promise<Json> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    const body = (await resp.json()) as { ok: boolean; result?: Json; error?: { code: string; message: string } };
    this.record("POST", path, payload, resp.status, body as Json);
    if (!body.ok) {
      throw new ApiError(body.error?.code ?? "unknown", body.error?.message ?? "request failed");
    }
    return body.result as Json;
  }

  async get(path: string): Promise<Json> {
    const resp = await this.fetchImpl(this.baseUrl + path);
    const body = (await resp.json()) as { ok: boolean; result?: Json };
    this.record("GET", path, null, resp.status, body as Json);
    if (!body.ok) throw new ApiError("unknown", "request failed");
    return body.result as Json;
  }

  // -- typed wrappers --------------------------------------------------

  /** Canonicalize a raw metaspace vector into a space point. */
  async canonicalize(sig: string, coords: number[]): Promise<number[]> {
    const result = (await this.post("/apply", {
      sig,
      motion: { axis: 1, angle: 0 },
      points: [coords],
      normalize: true,
    })) as { points: number[][] };
    return result.points[0];
  }

  async measure(sig: string, a: number[][], b: number[][]): Promise<MeasureResult> {
    return (await this.post("/measure", { sig, a, b })) as unknown as MeasureResult;
  }

  async connectable(sig: string, x: number[], y: number[]): Promise<ConnectResult> {
    return (await this.post("/connectable", { sig, x, y })) as unknown as ConnectResult;
  }

  /** Frames of a motion applied to points at the given path fractions. */
  async applyFrames(
    sig: string,
    motion: Json,
    points: number[][],
    fractions: number[],
  ): Promise<number[][][]> {
    const result = (await this.post("/apply", { sig, motion, points, fractions })) as {
      frames: number[][][];
    };
    return result.frames;
  }

  /** Points of the geodesic segment between two connectable points. */
  async segmentSamples(sig: string, from: number[], to: number[], steps = 10): Promise<number[][]> {
    const fractions = Array.from({ length: steps + 1 }, (_, i) => i / steps);
    const frames = await this.applyFrames(sig, { from, to }, [from], fractions);
    return frames.map((frame) => frame[0]);
  }

  async tiling(p: number, q: number, depth: number, d = 1.0): Promise<OrbitResult> {
    return (await this.post("/tiling", { p, q, depth, d })) as unknown as OrbitResult;
  }
}

/** True when the number appears verbatim somewhere in the logged responses. */
export function numberInLog(log: LogEntry[], value: number): boolean {
  const seen = (node: Json): boolean => {
    if (typeof node === "number") return node === value;
    if (Array.isArray(node)) return node.some(seen);
    if (node && typeof node === "object") return Object.values(node).some(seen);
    return false;
  };
  return log.some((entry) => seen(entry.response));
}

/** Audit: every displayed number must be traceable to a response. */
export function auditDisplayed(log: LogEntry[], displayed: number[]): number[] {
  return displayed.filter((v) => !numberInLog(log, v));
}
