// Coupling color-coding: nodes whose distinct-dependency count exceeds the
// threshold render in the alert palette, everything else in the base palette.

import type { GraphDocument } from "./types";

export const DEFAULT_COUPLING_THRESHOLD = 5;

export type Palette = "alert" | "base";

export function couplingPalette(
  graph: GraphDocument,
  threshold: number,
): Map<string, Palette> {
  if (threshold < 0 || !Number.isFinite(threshold)) {
    throw new RangeError(`coupling threshold must be >= 0, got ${threshold}`);
  }
  const out = new Map<string, Palette>();
  for (const node of graph.nodes) {
    out.set(node.id, node.dependency_count > threshold ? "alert" : "base");
  }
  return out;
}

export function alertNodes(graph: GraphDocument, threshold: number): Set<string> {
  const set = new Set<string>();
  for (const [id, palette] of couplingPalette(graph, threshold)) {
    if (palette === "alert") set.add(id);
  }
  return set;
}

/** Threshold to start from: the exported annotation wins over the default. */
export function initialThreshold(graph: GraphDocument): number {
  return graph.coupling_threshold ?? DEFAULT_COUPLING_THRESHOLD;
}
