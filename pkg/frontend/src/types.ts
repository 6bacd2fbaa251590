export interface GraphNode {
  id: string;
  name: string;
  dependency_count: number;
  dependents_count: number;
  over_threshold?: boolean;
}

export interface GraphLink {
  source: string;
  target: string;
  call_count: number;
}

export interface GraphDocument {
  schema_version: string;
  nodes: GraphNode[];
  links: GraphLink[];
  coupling_threshold?: number;
}

export interface TimelineRow {
  version: string;
  s1: number;
  s2: number;
  d1: number;
  d2: number;
  d3: number;
  d4: number;
  d5: number;
}

export const METRICS = ["s1", "s2", "d1", "d2", "d3", "d4", "d5"] as const;
export type MetricName = (typeof METRICS)[number];

export interface ClassField {
  type: string;
  name: string;
}

export interface ClassBlock {
  name: string;
  fields: ClassField[];
}

export interface ClassRelation {
  source: string;
  target: string;
  label: string;
}

export interface ContextMapModel {
  classes: ClassBlock[];
  relations: ClassRelation[];
}

export interface DatasetIndex {
  schema_version: string;
  datasets: string[];
  evolution?: string;
}
