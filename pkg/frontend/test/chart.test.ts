import { describe, expect, it } from "vitest";

import { countsChart, orderedBars } from "../src/chart.js";
import type { SimulateResult } from "../src/types.js";
import { fixtures } from "./helpers.js";

const grover = fixtures.simulateGrover.result as SimulateResult;

describe("orderedBars", () => {
  it("orders by count desc then bitstring asc, like the CLI table", () => {
    const bars = orderedBars({ "11": 5, "00": 5, "10": 9 }, 19);
    expect(bars.map((b) => b.bits)).toEqual(["10", "00", "11"]);
  });

  it("dominant bar equals the CLI's top bitstring for the same seed", () => {
    // fixtures.simulateGrover is the recorded /api/simulate response for
    // (grover script, shots=4096, seed=7); the CLI's top table row for that
    // triple is bitstring 000 with 546 counts.
    const bars = orderedBars(grover.counts, grover.shots);
    expect(bars[0]!.bits).toBe("000");
    expect(bars[0]!.count).toBe(546);
  });
});

describe("countsChart", () => {
  it("renders one labelled bar per bitstring", () => {
    const svg = countsChart(grover);
    for (const bits of Object.keys(grover.counts)) {
      expect(svg).toContain(`>${bits}</text>`);
    }
    expect(svg.match(/<rect /g)).toHaveLength(8);
    expect(svg.startsWith("<svg")).toBe(true);
  });

  it("is empty for a measurement-free result", () => {
    expect(
      countsChart({ seed: 1, shots: 4, counts: {}, marginals: {} }),
    ).toBe("");
  });

  it("is deterministic", () => {
    expect(countsChart(grover)).toBe(countsChart(grover));
  });
});
