// Wire types of the qadl-service JSON API.

export interface Diagnostic {
  severity: "error" | "warning";
  code?: string;
  message: string;
  line: number;
  col: number;
  len: number;
  hint?: string;
}

export interface ApiResponse<R> {
  ok: boolean;
  diagnostics: Diagnostic[];
  result?: R;
}

export interface ParseSummary {
  name: string;
  qubits: number;
  cbits: number;
  gates: number;
  measures: number;
  ops: number;
}

export interface RenderResult {
  format: string;
  document: string;
}

export interface SimulateResult {
  seed: number;
  shots: number;
  counts: Record<string, number>;
  marginals: Record<string, number>;
}

export interface ExportResult {
  document: string;
  filename: string;
}

export interface HealthResult {
  status: string;
  version: string;
}
