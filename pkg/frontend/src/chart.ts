// SVG rendering of the metrics timeline chart.

import { chartModel, polylineAttribute } from "./timeline";
import type { TimelineRow } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

const SERIES_COLORS: Record<string, string> = {
  s1: "#4f86c6",
  s2: "#74b3ce",
  d1: "#e4572e",
  d2: "#f5d547",
  d3: "#8fb339",
  d4: "#b36a5e",
  d5: "#9a7bb0",
};

export function renderTimeline(container: HTMLElement, rows: TimelineRow[]): void {
  container.replaceChildren();
  const model = chartModel(rows);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${model.width} ${model.height}`);
  svg.setAttribute("class", "timeline-chart");
  for (const series of model.series) {
    const line = document.createElementNS(SVG_NS, "polyline");
    line.setAttribute("points", polylineAttribute(series));
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", SERIES_COLORS[series.metric]);
    line.setAttribute("stroke-width", "2");
    line.setAttribute("data-metric", series.metric);
    svg.appendChild(line);
    for (const [x, y] of series.points) {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(x));
      dot.setAttribute("cy", String(y));
      dot.setAttribute("r", "3");
      dot.setAttribute("fill", SERIES_COLORS[series.metric]);
      svg.appendChild(dot);
    }
  }
  container.appendChild(svg);

  const legend = document.createElement("div");
  legend.className = "timeline-legend";
  for (const series of model.series) {
    const item = document.createElement("span");
    item.style.color = SERIES_COLORS[series.metric];
    item.textContent = series.metric.toUpperCase();
    legend.appendChild(item);
  }
  const versions = document.createElement("span");
  versions.className = "timeline-versions";
  versions.textContent = model.versions.join(" → ");
  legend.appendChild(versions);
  container.appendChild(legend);
}
