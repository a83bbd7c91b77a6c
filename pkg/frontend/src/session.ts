// Editor session state machine.
//
// Every edit bumps a revision counter; preview and run responses are tagged
// with the revision they were requested for and discarded if the editor has
// moved on, so stale network responses can never overwrite newer state. The
// live preview is debounced; a run is explicit and cancellable.

import type { ApiClient, SimulateOptions } from "./api.js";
import type { Diagnostic, SimulateResult } from "./types.js";

export type SessionListener = (session: EditorSession) => void;

const isAbort = (err: unknown): boolean =>
  err instanceof DOMException ? err.name === "AbortError" : false;

export class EditorSession {
  source = "";
  dirty = false;
  revision = 0;

  diagnostics: Diagnostic[] = [];
  /** Last good diagram document (SVG text). */
  diagram: string | null = null;
  /** True while `diagram` belongs to an older revision than the editor. */
  diagramStale = false;
  counts: SimulateResult | null = null;
  running = false;
  networkError: string | null = null;

  readonly debounceMs: number;

  private timer: ReturnType<typeof setTimeout> | null = null;
  private runController: AbortController | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: SessionListener = () => {},
    debounceMs = 300,
  ) {
    this.debounceMs = debounceMs;
  }

  get parseOk(): boolean {
    return !this.diagnostics.some((d) => d.severity === "error");
  }

  get exportEnabled(): boolean {
    return this.source.trim().length > 0 && this.parseOk && !this.dirty;
  }

  /** Editor content changed: bump the revision and schedule a preview. */
  edit(source: string): void {
    this.source = source;
    this.revision += 1;
    this.dirty = true;
    this.diagramStale = this.diagram !== null;
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    const revision = this.revision;
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.preview(revision);
    }, this.debounceMs);
    this.notify();
  }

  /** Run the pending preview immediately (used by tests and on paste). */
  async flushPreview(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    await this.preview(this.revision);
  }

  private async preview(revision: number): Promise<void> {
    if (revision !== this.revision) {
      return; // editor moved on before the debounce fired
    }
    if (this.source.trim() === "") {
      this.diagnostics = [];
      this.diagram = null;
      this.diagramStale = false;
      this.dirty = false;
      this.networkError = null;
      this.notify();
      return;
    }
    let response;
    try {
      response = await this.api.render(this.source, "svg");
    } catch (err) {
      if (isAbort(err)) return;
      if (revision === this.revision) {
        this.networkError = "service unreachable; edits are kept locally";
        this.notify();
      }
      return;
    }
    if (revision !== this.revision) {
      return; // stale response: a newer revision exists
    }
    this.networkError = null;
    this.diagnostics = response.diagnostics;
    if (response.ok && response.result) {
      this.diagram = response.result.document;
      this.diagramStale = false;
    } else {
      // keep the last good diagram, dimmed, with markers at the diagnostics
      this.diagramStale = this.diagram !== null;
    }
    this.dirty = false;
    this.notify();
  }

  /** Explicit Run: simulate with given shots/seed; cancellable. */
  async run(options: SimulateOptions): Promise<void> {
    const revision = this.revision;
    this.cancelRun();
    const controller = new AbortController();
    this.runController = controller;
    this.running = true;
    this.notify();
    let response;
    try {
      response = await this.api.simulate(this.source, options, controller.signal);
    } catch (err) {
      if (this.runController === controller) {
        this.running = false;
        this.runController = null;
        if (!isAbort(err)) {
          this.networkError = "service unreachable; edits are kept locally";
        }
        this.notify();
      }
      return; // cancelled or failed: no partial chart
    }
    if (this.runController !== controller || revision !== this.revision) {
      return; // cancelled meanwhile, or the source changed under the run
    }
    this.running = false;
    this.runController = null;
    this.diagnostics = response.diagnostics;
    if (response.ok && response.result) {
      this.counts = response.result;
    }
    this.notify();
  }

  /** Abort an in-flight run; the UI returns to idle with no partial chart. */
  cancelRun(): void {
    if (this.runController !== null) {
      this.runController.abort();
      this.runController = null;
      this.running = false;
      this.notify();
    }
  }

  private notify(): void {
    this.onChange(this);
  }
}
