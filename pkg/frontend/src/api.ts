// Thin typed client for the qadl-service endpoints. Every displayed diagram
// or count is a verbatim service response; nothing is computed client-side.

import type {
  ApiResponse,
  ExportResult,
  HealthResult,
  ParseSummary,
  RenderResult,
  SimulateResult,
} from "./types.js";

export interface SimulateOptions {
  shots?: number;
  seed?: number;
}

export interface ApiClient {
  parse(source: string, signal?: AbortSignal): Promise<ApiResponse<ParseSummary>>;
  render(
    source: string,
    format: "svg" | "text",
    signal?: AbortSignal,
  ): Promise<ApiResponse<RenderResult>>;
  simulate(
    source: string,
    options: SimulateOptions,
    signal?: AbortSignal,
  ): Promise<ApiResponse<SimulateResult>>;
  exportArch(source: string, signal?: AbortSignal): Promise<ApiResponse<ExportResult>>;
  health(): Promise<HealthResult>;
}

async function post<R>(
  base: string,
  path: string,
  body: unknown,
  signal?: AbortSignal,
): Promise<ApiResponse<R>> {
  const response = await fetch(`${base}${path}`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
    signal,
  });
  return (await response.json()) as ApiResponse<R>;
}

export function createClient(base = ""): ApiClient {
  return {
    parse: (source, signal) => post(base, "/api/parse", { source }, signal),
    render: (source, format, signal) =>
      post(base, "/api/render", { source, options: { format } }, signal),
    simulate: (source, options, signal) =>
      post(base, "/api/simulate", { source, options }, signal),
    exportArch: (source, signal) => post(base, "/api/export", { source }, signal),
    health: async () => {
      const response = await fetch(`${base}/api/health`);
      return (await response.json()) as HealthResult;
    },
  };
}
