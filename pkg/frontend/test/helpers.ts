// Shared test scaffolding: a fake ApiClient whose responses are the recorded
// output of the real service (see fixtures.json), plus controllable delays so
// tests can interleave responses across revisions.

import type { ApiClient } from "../src/api.js";
import type { ApiResponse, RenderResult, SimulateResult } from "../src/types.js";
import fixtures from "./fixtures.json" with { type: "json" };

export { fixtures };

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (err: unknown) => void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (err: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export interface FakeApi extends ApiClient {
  renderCalls: string[];
  simulateCalls: { source: string; shots?: number; seed?: number }[];
  /** When set, the next render() returns this pending promise. */
  pendingRender: Deferred<ApiResponse<RenderResult>> | null;
  pendingSimulate: Deferred<ApiResponse<SimulateResult>> | null;
}

export function abortError(): DOMException {
  return new DOMException("aborted", "AbortError");
}

export function makeFakeApi(): FakeApi {
  const api: FakeApi = {
    renderCalls: [],
    simulateCalls: [],
    pendingRender: null,
    pendingSimulate: null,

    async parse(source: string) {
      return source === fixtures.badSource
        ? (fixtures.parseBad as ApiResponse<never>)
        : (fixtures.parseTeleportation as never);
    },

    async render(source: string) {
      api.renderCalls.push(source);
      if (api.pendingRender) {
        const pending = api.pendingRender;
        api.pendingRender = null;
        return pending.promise;
      }
      if (source === fixtures.badSource) {
        return fixtures.parseBad as ApiResponse<RenderResult>;
      }
      return fixtures.renderTeleportation as ApiResponse<RenderResult>;
    },

    async simulate(source: string, options, signal?: AbortSignal) {
      api.simulateCalls.push({ source, ...options });
      if (api.pendingSimulate) {
        const pending = api.pendingSimulate;
        api.pendingSimulate = null;
        if (signal) {
          signal.addEventListener("abort", () => pending.reject(abortError()));
        }
        return pending.promise;
      }
      return fixtures.simulateGrover as ApiResponse<SimulateResult>;
    },

    async exportArch() {
      return fixtures.exportTeleportation as never;
    },

    async health() {
      return { status: "ok", version: "test" };
    },
  };
  return api;
}
