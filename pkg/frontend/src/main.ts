import { renderTimeline } from "./chart";
import { initialThreshold } from "./coupling";
import { datasetUrl, selectDataset } from "./datasets";
import { renderContextMap } from "./diagram";
import {
  parseContextMap,
  parseDatasetIndex,
  parseGraphDocument,
  parseTimelineCsv,
  SchemaError,
} from "./parse";
import { createScene, type Scene } from "./scene";
import type { DatasetIndex } from "./types";

const el = {
  banner: document.getElementById("error-banner") as HTMLElement,
  graph: document.getElementById("graph") as HTMLElement,
  diagram: document.getElementById("diagram") as HTMLElement,
  chart: document.getElementById("chart") as HTMLElement,
  datasetPicker: document.getElementById("dataset-picker") as HTMLSelectElement,
  thresholdSlider: document.getElementById("threshold-slider") as HTMLInputElement,
  thresholdValue: document.getElementById("threshold-value") as HTMLElement,
  selectionInfo: document.getElementById("selection-info") as HTMLElement,
};

let scene: Scene | null = null;

async function fetchText(url: string): Promise<string> {
  const response = await fetch(url);
  if (!response.ok) throw new SchemaError(`${url}: HTTP ${response.status}`);
  return response.text();
}

function showError(message: string): void {
  // No partial render: wipe every panel before surfacing the banner.
  scene?.dispose();
  scene = null;
  el.graph.replaceChildren();
  el.diagram.replaceChildren();
  el.chart.replaceChildren();
  el.banner.textContent = message;
  el.banner.hidden = false;
}

async function loadDataset(index: DatasetIndex, dataset: string): Promise<void> {
  el.banner.hidden = true;
  const [graphText, contextMapText, timelineText] = await Promise.all([
    fetchText(datasetUrl(dataset, "graph.json")),
    fetchText(datasetUrl(dataset, "context-map.mmd")),
    fetchText(datasetUrl(dataset, "timeline.csv")),
  ]);
  const graph = parseGraphDocument(graphText);
  const contextMap = parseContextMap(contextMapText);
  let timeline = parseTimelineCsv(timelineText);
  if (index.evolution) {
    // Prefer the whole-series timeline for the evolution chart when exported.
    try {
      timeline = parseTimelineCsv(await fetchText(`datasets/${index.evolution}`));
    } catch {
      // keep the per-dataset timeline
    }
  }

  scene?.dispose();
  const threshold = initialThreshold(graph);
  el.thresholdSlider.max = String(
    Math.max(threshold, ...graph.nodes.map((n) => n.dependency_count), 1),
  );
  el.thresholdSlider.value = String(threshold);
  el.thresholdValue.textContent = String(threshold);
  scene = createScene(el.graph, graph, threshold, (state) => {
    el.selectionInfo.textContent = state.selected
      ? `selected: ${state.selected}`
      : "no selection";
  });
  renderContextMap(el.diagram, contextMap);
  renderTimeline(el.chart, timeline);
}

async function start(): Promise<void> {
  try {
    const index = parseDatasetIndex(await fetchText("datasets/index.json"));
    const initial = selectDataset(index, window.location.search);
    el.datasetPicker.replaceChildren(
      ...index.datasets.map((name) => {
        const option = document.createElement("option");
        option.value = name;
        option.textContent = name;
        option.selected = name === initial;
        return option;
      }),
    );
    el.datasetPicker.addEventListener("change", () => {
      const chosen = el.datasetPicker.value;
      const url = new URL(window.location.href);
      url.searchParams.set("dataset", chosen);
      window.history.replaceState(null, "", url);
      loadDataset(index, chosen).catch((error) => showError(String(error)));
    });
    el.thresholdSlider.addEventListener("input", () => {
      const value = Number(el.thresholdSlider.value);
      el.thresholdValue.textContent = String(value);
      scene?.setThreshold(value);
    });
    await loadDataset(index, initial);
  } catch (error) {
    showError(error instanceof SchemaError ? error.message : String(error));
  }
}

void start();
