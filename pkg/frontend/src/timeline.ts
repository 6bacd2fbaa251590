// Chart model for the metrics timeline: one polyline per metric, scaled to
// the drawing area. Pure geometry so it is testable without a DOM.

import type { MetricName, TimelineRow } from "./types";
import { METRICS } from "./types";

export interface ChartSeries {
  metric: MetricName;
  points: Array<[number, number]>;
}

export interface ChartModel {
  width: number;
  height: number;
  versions: string[];
  series: ChartSeries[];
  maxValue: number;
}

export function chartModel(
  rows: TimelineRow[],
  width = 640,
  height = 240,
  padding = 24,
): ChartModel {
  const versions = rows.map((row) => row.version);
  const maxValue = Math.max(1, ...rows.flatMap((row) => METRICS.map((m) => row[m])));
  const innerWidth = width - 2 * padding;
  const innerHeight = height - 2 * padding;
  const x = (index: number): number =>
    rows.length <= 1
      ? padding + innerWidth / 2
      : padding + (index * innerWidth) / (rows.length - 1);
  const y = (value: number): number => padding + innerHeight * (1 - value / maxValue);
  const series = METRICS.map((metric) => ({
    metric,
    points: rows.map((row, index) => [x(index), y(row[metric])] as [number, number]),
  }));
  return { width, height, versions, series, maxValue };
}

export function polylineAttribute(series: ChartSeries): string {
  return series.points.map(([px, py]) => `${px},${py}`).join(" ");
}
