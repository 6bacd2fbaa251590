import { readFileSync } from "node:fs";
import { join } from "node:path";

// vitest runs with the package root as cwd in both node and jsdom runs.
export function readDataset(...parts: string[]): string {
  return readFileSync(join(process.cwd(), "public", "datasets", ...parts), "utf8");
}
