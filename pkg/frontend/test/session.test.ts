import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { EditorSession } from "../src/session.js";
import type { ApiResponse, RenderResult } from "../src/types.js";
import { deferred, fixtures, makeFakeApi } from "./helpers.js";

beforeEach(() => {
  vi.useFakeTimers();
});

afterEach(() => {
  vi.useRealTimers();
});

async function settle(): Promise<void> {
  await vi.runAllTimersAsync();
}

describe("live preview", () => {
  it("renders a diagram after the debounce without a run click", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    session.edit(fixtures.teleportationSource);
    expect(api.renderCalls).toHaveLength(0); // not yet: debounce pending
    await settle();
    expect(api.renderCalls).toHaveLength(1);
    expect(session.diagram).toBe(fixtures.renderTeleportation.result.document);
    expect(session.diagramStale).toBe(false);
    expect(session.diagnostics).toEqual([]);
  });

  it("debounces bursts of edits into one render call", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    for (const chunk of ["@start", "@startqadl\nCircuit", fixtures.teleportationSource]) {
      session.edit(chunk);
      vi.advanceTimersByTime(100); // under the 300 ms debounce
    }
    await settle();
    expect(api.renderCalls).toHaveLength(1);
    expect(api.renderCalls[0]).toBe(fixtures.teleportationSource);
  });

  it("surfaces a marker at the diagnostic's line and col on a typo", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    session.edit(fixtures.teleportationSource);
    await settle();
    session.edit(fixtures.badSource);
    await settle();
    expect(session.diagnostics).toHaveLength(1);
    const diag = session.diagnostics[0]!;
    expect(diag.line).toBe(fixtures.parseBad.diagnostics[0].line);
    expect(diag.col).toBe(fixtures.parseBad.diagnostics[0].col);
    // previous good diagram is kept, dimmed
    expect(session.diagram).toBe(fixtures.renderTeleportation.result.document);
    expect(session.diagramStale).toBe(true);
  });

  it("clearing the editor resets to the empty placeholder state", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    session.edit(fixtures.teleportationSource);
    await settle();
    session.edit("");
    await settle();
    expect(session.diagram).toBeNull();
    expect(session.diagnostics).toEqual([]);
    expect(api.renderCalls).toHaveLength(1); // empty source never hits the service
  });

  it("discards stale responses: revision k never overwrites k' > k", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);

    const slow = deferred<ApiResponse<RenderResult>>();
    api.pendingRender = slow;
    session.edit(fixtures.badSource); // revision 1, will answer late
    await vi.advanceTimersByTimeAsync(300);

    session.edit(fixtures.teleportationSource); // revision 2
    await settle(); // revision 2 resolves with the good diagram

    slow.resolve(fixtures.parseBad as ApiResponse<RenderResult>); // late revision-1 reply
    await settle();

    expect(session.diagram).toBe(fixtures.renderTeleportation.result.document);
    expect(session.diagnostics).toEqual([]); // stale diagnostics were dropped
    expect(session.diagramStale).toBe(false);
  });

  it("keeps editor content and shows a banner on network failure", async () => {
    const api = makeFakeApi();
    api.render = async () => {
      throw new TypeError("fetch failed");
    };
    const session = new EditorSession(api);
    session.edit(fixtures.teleportationSource);
    await settle();
    expect(session.source).toBe(fixtures.teleportationSource);
    expect(session.networkError).not.toBeNull();
  });
});

describe("run", () => {
  it("stores counts and the seed that produced them", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    session.edit(fixtures.groverSource);
    await settle();
    await session.run({ shots: 4096, seed: 7 });
    expect(session.counts).not.toBeNull();
    expect(session.counts!.seed).toBe(7);
    expect(session.counts!.counts).toEqual(fixtures.simulateGrover.result.counts);
    expect(api.simulateCalls).toEqual([
      { source: fixtures.groverSource, shots: 4096, seed: 7 },
    ]);
  });

  it("cancel mid-run returns to idle with no partial chart", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    session.edit(fixtures.groverSource);
    await settle();

    api.pendingSimulate = deferred();
    const running = session.run({ shots: 4096, seed: 7 });
    expect(session.running).toBe(true);
    session.cancelRun();
    await running;
    expect(session.running).toBe(false);
    expect(session.counts).toBeNull();
  });

  it("a run result for an old revision never lands", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    session.edit(fixtures.groverSource);
    await settle();

    const slow = deferred<never>();
    api.pendingSimulate = slow as never;
    const running = session.run({ shots: 16, seed: 1 });
    session.edit(fixtures.teleportationSource); // newer revision while running
    slow.resolve(fixtures.simulateGrover as never);
    await running;
    await settle();
    expect(session.counts).toBeNull();
  });
});

describe("export gating", () => {
  it("export is disabled while the script has parse errors", async () => {
    const api = makeFakeApi();
    const session = new EditorSession(api);
    session.edit(fixtures.badSource);
    await settle();
    expect(session.parseOk).toBe(false);
    expect(session.exportEnabled).toBe(false);
    session.edit(fixtures.teleportationSource);
    await settle();
    expect(session.exportEnabled).toBe(true);
  });
});
