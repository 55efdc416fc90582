// Payload shapes mirroring the server's JSON contracts. Weights may be
// integers or "p/q" strings (exact rationals); the UI never does arithmetic
// on them, only display.

export type WeightValue = number | string;

export interface GraphEdge {
  u: number;
  v: number;
  w: WeightValue;
}

export interface GraphPayload {
  n: number;
  labels: string[] | null;
  edges: GraphEdge[];
  total_weight: WeightValue;
}

export interface EvaluationPayload {
  size: WeightValue;
  recall: number;
  precision: number;
  div_d: number;
  accuracy: number | null;
  satisfied_forms: number[];
  violating_forms: number[];
}

export interface ViolationPayload {
  form: number;
  gram: string;
  language: string;
  components: number[][];
}

export type EditName = "add_edge" | "remove_edge";

export interface EditOp {
  op: EditName;
  u: number;
  v: number;
}

export interface SessionPayload {
  id: string;
  base_rank: number | null;
  graph: GraphPayload;
  evaluation: EvaluationPayload;
  violations: ViolationPayload[];
  graph_connected: boolean;
  edit_log: EditOp[];
}

export interface EditResponse {
  evaluation: EvaluationPayload;
  violations: ViolationPayload[];
  graph_connected: boolean;
  graph: GraphPayload;
}

export interface TreePayload {
  rank: number;
  tree: GraphPayload;
  evaluation: EvaluationPayload;
  violations: ViolationPayload[];
}

export interface BoiPayload {
  boundaries: [WeightValue, number][];
}

export type EdgePair = [number, number];

export interface DiffPayload {
  matched_edges: EdgePair[];
  missing_edges: EdgePair[];
  extra_edges: EdgePair[];
  reference: GraphPayload;
}

export interface RegionPayload {
  form: number;
  gram?: string;
  nodes: number[];
  connected: boolean;
  components: number[][];
}

export interface DatasetFunction {
  abbr: string;
  full?: string;
}

export interface DatasetForm {
  language: string;
  gram: string;
  functions: number[];
}

export interface DatasetPayload {
  functions: DatasetFunction[];
  forms: DatasetForm[];
}
