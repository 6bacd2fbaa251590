// 3D force-directed scene for the service view. All decisions (what is
// highlighted, which palette a node gets) come from the pure modules; this
// file only feeds them into the renderer.

import ForceGraph3D, { type LinkObject, type NodeObject } from "3d-force-graph";
import { couplingPalette } from "./coupling";
import { nodeEmphasis, selectNode, type SelectionState } from "./highlight";
import type { GraphDocument } from "./types";

const COLORS = {
  alert: "#e4572e",
  base: "#4f86c6",
  dimmed: "#2a2f3a",
  highlighted: "#f5d547",
};

export interface Scene {
  setThreshold(threshold: number): void;
  selection(): SelectionState;
  dispose(): void;
}

export function createScene(
  container: HTMLElement,
  graph: GraphDocument,
  initialThreshold: number,
  onSelectionChange: (state: SelectionState) => void,
): Scene {
  let state: SelectionState = { selected: null };
  let threshold = initialThreshold;

  // The renderer mutates its own copies; the parsed document stays untouched.
  const data = {
    nodes: graph.nodes.map((node) => ({ ...node })),
    links: graph.links.map((link) => ({ ...link })),
  };

  const renderer = new ForceGraph3D(container)
    .graphData(data)
    .nodeLabel((node: NodeObject) => describeNode(graph, String(node.id)))
    .linkDirectionalArrowLength(4)
    .linkDirectionalArrowRelPos(1)
    .linkWidth((link: LinkObject) =>
      Math.min(4, (link as { call_count?: number }).call_count ?? 1),
    )
    .backgroundColor("#10131a");

  function paint(): void {
    const palette = couplingPalette(graph, threshold);
    const emphasis = nodeEmphasis(graph, state);
    renderer.nodeColor((node: NodeObject) => {
      const id = String(node.id);
      if (emphasis.get(id) === "dimmed") return COLORS.dimmed;
      if (emphasis.get(id) === "highlighted" && state.selected !== id) {
        return COLORS.highlighted;
      }
      return palette.get(id) === "alert" ? COLORS.alert : COLORS.base;
    });
  }

  renderer.onNodeClick((node: NodeObject) => {
    state = selectNode(graph, state, String(node.id));
    paint();
    onSelectionChange(state);
  });

  paint();
  return {
    setThreshold(next: number): void {
      threshold = next;
      paint();
    },
    selection(): SelectionState {
      return state;
    },
    dispose(): void {
      renderer._destructor();
    },
  };
}

function describeNode(graph: GraphDocument, id: string): string {
  const node = graph.nodes.find((n) => n.id === id);
  if (!node) return id;
  return `${node.name} — calls ${node.dependency_count}, called by ${node.dependents_count}`;
}
