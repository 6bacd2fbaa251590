import type { DatasetIndex } from "./types";

/** Resolve which dataset directory to show, honoring ?dataset=<dir>. */
export function selectDataset(index: DatasetIndex, query: string): string {
  const requested = new URLSearchParams(query).get("dataset");
  if (requested && index.datasets.includes(requested)) return requested;
  return index.datasets[0];
}

export function datasetUrl(dataset: string, file: string): string {
  return `datasets/${encodeURIComponent(dataset)}/${file}`;
}
