// Parsers for the analyzer's exported artifacts. Every parser validates the
// shape it needs and throws SchemaError on mismatch so the app can show an
// error banner instead of a partially rendered scene.

import type {
  ClassBlock,
  ClassRelation,
  ContextMapModel,
  DatasetIndex,
  GraphDocument,
  GraphLink,
  GraphNode,
  TimelineRow,
} from "./types";
import { METRICS } from "./types";

export class SchemaError extends Error {}

const SUPPORTED_SCHEMA = "1";

function fail(message: string): never {
  throw new SchemaError(message);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function requireString(obj: Record<string, unknown>, key: string, where: string): string {
  const value = obj[key];
  if (typeof value !== "string") fail(`${where}: missing string "${key}"`);
  return value;
}

function requireNumber(obj: Record<string, unknown>, key: string, where: string): number {
  const value = obj[key];
  if (typeof value !== "number" || !Number.isFinite(value)) {
    fail(`${where}: missing number "${key}"`);
  }
  return value;
}

export function parseGraphDocument(raw: unknown): GraphDocument {
  const data = typeof raw === "string" ? safeJson(raw, "graph document") : raw;
  if (!isRecord(data)) fail("graph document: not an object");
  const schema = requireString(data, "schema_version", "graph document");
  if (schema !== SUPPORTED_SCHEMA) {
    fail(`graph document: unsupported schema_version "${schema}"`);
  }
  if (!Array.isArray(data.nodes)) fail("graph document: nodes[] missing");
  if (!Array.isArray(data.links)) fail("graph document: links[] missing");
  const nodes: GraphNode[] = data.nodes.map((entry, i) => {
    if (!isRecord(entry)) fail(`graph node #${i}: not an object`);
    return {
      id: requireString(entry, "id", `graph node #${i}`),
      name: requireString(entry, "name", `graph node #${i}`),
      dependency_count: requireNumber(entry, "dependency_count", `graph node #${i}`),
      dependents_count: requireNumber(entry, "dependents_count", `graph node #${i}`),
      ...(typeof entry.over_threshold === "boolean"
        ? { over_threshold: entry.over_threshold }
        : {}),
    };
  });
  const ids = new Set(nodes.map((n) => n.id));
  if (ids.size !== nodes.length) fail("graph document: duplicate node ids");
  const links: GraphLink[] = data.links.map((entry, i) => {
    if (!isRecord(entry)) fail(`graph link #${i}: not an object`);
    const link = {
      source: requireString(entry, "source", `graph link #${i}`),
      target: requireString(entry, "target", `graph link #${i}`),
      call_count: requireNumber(entry, "call_count", `graph link #${i}`),
    };
    if (!ids.has(link.source) || !ids.has(link.target)) {
      fail(`graph link #${i}: endpoint not in nodes[]`);
    }
    return link;
  });
  const document: GraphDocument = { schema_version: schema, nodes, links };
  if (typeof data.coupling_threshold === "number") {
    document.coupling_threshold = data.coupling_threshold;
  }
  return document;
}

function safeJson(text: string, where: string): unknown {
  try {
    return JSON.parse(text);
  } catch {
    fail(`${where}: invalid JSON`);
  }
}

export function parseTimelineCsv(text: string): TimelineRow[] {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) fail("timeline: empty document");
  const header = lines[0];
  if (header !== "version,s1,s2,d1,d2,d3,d4,d5") {
    fail(`timeline: unexpected header "${header}"`);
  }
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== 8) fail(`timeline row #${i}: expected 8 cells`);
    const row: TimelineRow = {
      version: cells[0],
      s1: 0,
      s2: 0,
      d1: 0,
      d2: 0,
      d3: 0,
      d4: 0,
      d5: 0,
    };
    METRICS.forEach((metric, k) => {
      const value = Number(cells[k + 1]);
      if (!Number.isInteger(value) || value < 0) {
        fail(`timeline row #${i}: bad ${metric} value "${cells[k + 1]}"`);
      }
      row[metric] = value;
    });
    return row;
  });
}

// The class diagram text is the analyzer's own export format:
//   classDiagram
//     class Name {
//       Type field
//     }
//     A --> B : via
const CLASS_OPEN = /^ {2}class (\S+) \{$/;
const FIELD_LINE = /^ {4}(\S.*) (\S+)$/;
const RELATION_LINE = /^ {2}(\S+) --> (\S+) : (.+)$/;

export function parseContextMap(text: string): ContextMapModel {
  const lines = text.split("\n");
  if (lines[0] !== "classDiagram") fail("context map: missing classDiagram header");
  const classes: ClassBlock[] = [];
  const relations: ClassRelation[] = [];
  let current: ClassBlock | null = null;
  for (const line of lines.slice(1)) {
    if (line === "") continue;
    const open = CLASS_OPEN.exec(line);
    if (open) {
      if (current) fail("context map: nested class block");
      current = { name: open[1], fields: [] };
      continue;
    }
    if (line === "  }") {
      if (!current) fail("context map: stray block close");
      classes.push(current);
      current = null;
      continue;
    }
    const field = FIELD_LINE.exec(line);
    if (field && current) {
      current.fields.push({ type: field[1], name: field[2] });
      continue;
    }
    const relation = RELATION_LINE.exec(line);
    if (relation && !current) {
      relations.push({ source: relation[1], target: relation[2], label: relation[3] });
      continue;
    }
    fail(`context map: unrecognized line "${line}"`);
  }
  if (current) fail("context map: unterminated class block");
  const known = new Set(classes.map((block) => block.name));
  for (const relation of relations) {
    if (!known.has(relation.source) || !known.has(relation.target)) {
      fail(`context map: relation references unknown class`);
    }
  }
  return { classes, relations };
}

export function parseDatasetIndex(raw: unknown): DatasetIndex {
  const data = typeof raw === "string" ? safeJson(raw, "dataset index") : raw;
  if (!isRecord(data)) fail("dataset index: not an object");
  const schema = requireString(data, "schema_version", "dataset index");
  if (schema !== SUPPORTED_SCHEMA) {
    fail(`dataset index: unsupported schema_version "${schema}"`);
  }
  if (!Array.isArray(data.datasets) || data.datasets.some((d) => typeof d !== "string")) {
    fail("dataset index: datasets[] missing");
  }
  const index: DatasetIndex = {
    schema_version: schema,
    datasets: data.datasets as string[],
  };
  if (typeof data.evolution === "string") index.evolution = data.evolution;
  return index;
}
