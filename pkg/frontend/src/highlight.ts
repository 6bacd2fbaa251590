// Selection semantics: the highlight set is exactly the selected node plus
// the nodes it invokes; everything else is dimmed. Selecting the same node
// again clears the selection.

import type { GraphDocument } from "./types";

export interface SelectionState {
  selected: string | null;
}

export function emptySelection(): SelectionState {
  return { selected: null };
}

export function outNeighbors(graph: GraphDocument, id: string): Set<string> {
  const out = new Set<string>();
  for (const link of graph.links) {
    if (link.source === id) out.add(link.target);
  }
  return out;
}

export function highlightSet(graph: GraphDocument, selected: string | null): Set<string> {
  if (selected === null) return new Set();
  const set = outNeighbors(graph, selected);
  set.add(selected);
  return set;
}

/** Toggle selection; unknown ids leave the state untouched. */
export function selectNode(
  graph: GraphDocument,
  state: SelectionState,
  id: string,
): SelectionState {
  if (!graph.nodes.some((node) => node.id === id)) return state;
  if (state.selected === id) return { selected: null };
  return { selected: id };
}

export type NodeEmphasis = "highlighted" | "dimmed" | "base";

export function nodeEmphasis(
  graph: GraphDocument,
  state: SelectionState,
): Map<string, NodeEmphasis> {
  const highlighted = highlightSet(graph, state.selected);
  const out = new Map<string, NodeEmphasis>();
  for (const node of graph.nodes) {
    if (state.selected === null) out.set(node.id, "base");
    else out.set(node.id, highlighted.has(node.id) ? "highlighted" : "dimmed");
  }
  return out;
}
