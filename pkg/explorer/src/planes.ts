// The nine homogeneous planes: classical names with their signatures.

export interface PlaneInfo {
  name: string;
  sig: string;
  lengths: "elliptic" | "parabolic" | "hyperbolic";
  angles: "elliptic" | "parabolic" | "hyperbolic";
}

export const PLANES: PlaneInfo[] = [
  { name: "Elliptic", sig: "{1,1}", lengths: "elliptic", angles: "elliptic" },
  { name: "Euclidean", sig: "{0,1}", lengths: "parabolic", angles: "elliptic" },
  { name: "Lobachevsky", sig: "{-1,1}", lengths: "hyperbolic", angles: "elliptic" },
  { name: "Galilean (positive)", sig: "{1,0}", lengths: "elliptic", angles: "parabolic" },
  { name: "Galilean", sig: "{0,0}", lengths: "parabolic", angles: "parabolic" },
  { name: "Galilean (negative)", sig: "{-1,0}", lengths: "hyperbolic", angles: "parabolic" },
  { name: "Anti de Sitter", sig: "{1,-1}", lengths: "elliptic", angles: "hyperbolic" },
  { name: "Minkowski", sig: "{0,-1}", lengths: "parabolic", angles: "hyperbolic" },
  { name: "De Sitter", sig: "{-1,-1}", lengths: "hyperbolic", angles: "hyperbolic" },
];

export function planeBySig(sig: string): PlaneInfo {
  const hit = PLANES.find((p) => p.sig === sig);
  if (!hit) throw new Error(`unknown plane ${sig}`);
  return hit;
}

/** Hyperbolic angular type has limit directions worth drawing as guides. */
export function hasLimitDirections(plane: PlaneInfo): boolean {
  return plane.angles === "hyperbolic";
}
