// DOM wiring for the studio: editor on the left, live diagram on the right,
// run panel with a counts chart, and export buttons.

import { createClient } from "./api.js";
import { countsChart } from "./chart.js";
import { exportFilenames, triggerDownload } from "./download.js";
import { markerBoxes, positionToOffset } from "./markers.js";
import { EditorSession } from "./session.js";

const STARTER = `@startqadl
Circuit Bell {
    qubit q0, q1
    gate Hadamard q0
    gate CNOT q0 q1
    measure q0 -> c0
    measure q1 -> c1
}
@endqadl
`;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const api = createClient();
const editor = el<HTMLTextAreaElement>("editor");
const markerLayer = el<HTMLDivElement>("markers");
const diagramPanel = el<HTMLDivElement>("diagram");
const diagnosticsPanel = el<HTMLUListElement>("diagnostics");
const countsPanel = el<HTMLDivElement>("counts");
const seedLabel = el<HTMLSpanElement>("seed-used");
const statusLabel = el<HTMLSpanElement>("status");
const banner = el<HTMLDivElement>("banner");
const runButton = el<HTMLButtonElement>("run");
const cancelButton = el<HTMLButtonElement>("cancel");
const shotsInput = el<HTMLInputElement>("shots");
const seedInput = el<HTMLInputElement>("seed");
const exportArchButton = el<HTMLButtonElement>("export-arch");
const exportSvgButton = el<HTMLButtonElement>("export-svg");
const exportScriptButton = el<HTMLButtonElement>("export-script");

let circuitName: string | null = null;

function lineMetrics(): { lineHeight: number; charWidth: number } {
  const style = getComputedStyle(editor);
  const lineHeight = parseFloat(style.lineHeight) || 18;
  const probe = document.createElement("span");
  probe.style.font = style.font;
  probe.style.position = "absolute";
  probe.style.visibility = "hidden";
  probe.textContent = "0".repeat(100);
  document.body.appendChild(probe);
  const charWidth = probe.getBoundingClientRect().width / 100;
  probe.remove();
  return { lineHeight, charWidth };
}

function render(session: EditorSession): void {
  banner.hidden = session.networkError === null;
  if (session.networkError !== null) {
    banner.textContent = `${session.networkError} — `;
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.onclick = () => void session.flushPreview();
    banner.appendChild(retry);
  }

  if (session.source.trim() === "") {
    diagramPanel.innerHTML = '<p class="placeholder">Paste or type a QADL script to see its circuit.</p>';
  } else if (session.diagram !== null) {
    diagramPanel.innerHTML = session.diagram;
    diagramPanel.classList.toggle("stale", session.diagramStale);
  }

  diagnosticsPanel.innerHTML = "";
  const { lineHeight, charWidth } = lineMetrics();
  markerLayer.innerHTML = "";
  for (const marker of markerBoxes(session.diagnostics, lineHeight, charWidth)) {
    const box = document.createElement("div");
    box.className = `marker ${marker.severity}`;
    box.style.top = `${marker.top - editor.scrollTop}px`;
    box.style.left = `${marker.left - editor.scrollLeft}px`;
    box.style.width = `${marker.width}px`;
    box.title = marker.title;
    markerLayer.appendChild(box);
  }
  for (const diag of session.diagnostics) {
    const item = document.createElement("li");
    item.className = diag.severity;
    item.textContent = `${diag.line}:${diag.col} ${diag.severity}: ${diag.message}`;
    item.onclick = () => {
      editor.focus();
      const offset = positionToOffset(session.source, diag.line, diag.col);
      editor.setSelectionRange(offset, offset + Math.max(diag.len, 1));
    };
    diagnosticsPanel.appendChild(item);
  }

  if (session.counts !== null) {
    countsPanel.innerHTML = countsChart(session.counts) ||
      '<p class="placeholder">no measurements in the circuit</p>';
    seedLabel.textContent = `seed ${session.counts.seed}`;
    seedInput.placeholder = String(session.counts.seed);
  }

  runButton.disabled = session.running || session.source.trim() === "";
  cancelButton.hidden = !session.running;
  statusLabel.textContent = session.running
    ? "running…"
    : session.dirty
      ? "editing…"
      : session.parseOk
        ? "ok"
        : "errors";
  const exportable = session.exportEnabled;
  exportArchButton.disabled = !exportable;
  exportSvgButton.disabled = !exportable || session.diagram === null;
  exportScriptButton.disabled = session.source.trim() === "";
}

const session = new EditorSession(api, render, 300);

editor.addEventListener("input", () => session.edit(editor.value));
editor.addEventListener("scroll", () => render(session));

runButton.addEventListener("click", () => {
  const shots = parseInt(shotsInput.value, 10) || 1024;
  const seedRaw = seedInput.value.trim();
  const options = seedRaw === "" ? { shots } : { shots, seed: Number(seedRaw) };
  void session.run(options);
});
cancelButton.addEventListener("click", () => session.cancelRun());

exportScriptButton.addEventListener("click", () => {
  triggerDownload(exportFilenames(circuitName).script, session.source, "text/plain");
});
exportSvgButton.addEventListener("click", () => {
  if (session.diagram !== null) {
    triggerDownload(exportFilenames(circuitName).svg, session.diagram, "image/svg+xml");
  }
});
exportArchButton.addEventListener("click", () => {
  void api.exportArch(session.source).then((response) => {
    if (response.ok && response.result) {
      triggerDownload(response.result.filename, response.result.document, "application/json");
    }
  });
});

// keep the circuit name fresh for export filenames
const refreshName = async () => {
  if (session.source.trim() === "") return;
  const response = await api.parse(session.source);
  circuitName = response.ok && response.result ? response.result.name : null;
};
editor.addEventListener("blur", () => void refreshName());

editor.value = STARTER;
session.edit(STARTER);
void refreshName();
