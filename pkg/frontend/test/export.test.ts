import { describe, expect, it } from "vitest";

import { exportFilenames } from "../src/download.js";
import { markerBoxes, positionToOffset } from "../src/markers.js";
import { fixtures } from "./helpers.js";

describe("export filenames", () => {
  it("derive from the circuit name", () => {
    expect(exportFilenames("QuantumTeleportation")).toEqual({
      arch: "QuantumTeleportation.qadl.arch",
      svg: "QuantumTeleportation.svg",
      script: "QuantumTeleportation.qadl",
    });
  });

  it("fall back to a legal stem", () => {
    expect(exportFilenames(null).arch).toBe("circuit.qadl.arch");
    expect(exportFilenames("we/ird na:me").script).toBe("weirdname.qadl");
  });

  it("the service names the arch download after the circuit", () => {
    expect(fixtures.exportTeleportation.result.filename).toBe(
      "QuantumTeleportation.qadl.arch",
    );
  });
});

describe("export round-trip through the parse summary", () => {
  it("the exported document matches what /api/parse reports for the source", () => {
    const doc = JSON.parse(fixtures.exportTeleportation.result.document);
    const summary = fixtures.parseTeleportation.result;
    expect(doc.circuit).toBe(summary.name);
    expect(doc.qubits).toHaveLength(summary.qubits);
    expect(doc.cbits).toHaveLength(summary.cbits);
    const gates = doc.ops.filter((op: { op: string }) => op.op === "gate");
    const measures = doc.ops.filter((op: { op: string }) => op.op === "measure");
    expect(gates).toHaveLength(summary.gates);
    expect(measures).toHaveLength(summary.measures);
  });
});

describe("error markers", () => {
  it("place boxes at the diagnostic's line and column", () => {
    const diag = fixtures.parseBad.diagnostics[0];
    const [marker] = markerBoxes([diag], 20, 8);
    expect(marker!.top).toBe((diag.line - 1) * 20);
    expect(marker!.left).toBe((diag.col - 1) * 8);
    expect(marker!.width).toBe(diag.len * 8);
    expect(marker!.title).toContain(`${diag.line}:${diag.col}`);
  });

  it("positionToOffset maps line/col to a caret offset", () => {
    const source = "ab\ncde\nf";
    expect(positionToOffset(source, 1, 1)).toBe(0);
    expect(positionToOffset(source, 2, 3)).toBe(5);
    expect(positionToOffset(source, 3, 1)).toBe(7);
    // the recorded diagnostic points at the typo token in the bad source
    const diag = fixtures.parseBad.diagnostics[0];
    const offset = positionToOffset(fixtures.badSource, diag.line, diag.col);
    expect(fixtures.badSource.slice(offset, offset + diag.len)).toBe("q0q1");
  });
});
