// Counts bar chart as an SVG string. Bars are ordered most-frequent first,
// ties broken by bitstring, matching the CLI's table order, so the dominant
// bar is always the CLI's top row for the same seed.

import type { SimulateResult } from "./types.js";

export interface Bar {
  bits: string;
  count: number;
  frequency: number;
}

export function orderedBars(counts: Record<string, number>, shots: number): Bar[] {
  return Object.entries(counts)
    .sort(([aBits, aCount], [bBits, bCount]) =>
      aCount !== bCount ? bCount - aCount : aBits < bBits ? -1 : 1,
    )
    .map(([bits, count]) => ({ bits, count, frequency: count / shots }));
}

const BAR_W = 44;
const GAP = 14;
const PLOT_H = 150;
const LEFT = 10;
const TOP = 18;

export function countsChart(result: SimulateResult): string {
  const bars = orderedBars(result.counts, result.shots);
  if (bars.length === 0) {
    return "";
  }
  const max = bars[0]!.count;
  const width = LEFT * 2 + bars.length * (BAR_W + GAP);
  const height = TOP + PLOT_H + 40;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="monospace" font-size="11">`,
  ];
  bars.forEach((bar, i) => {
    const h = Math.max(1, Math.round((bar.count / max) * PLOT_H));
    const x = LEFT + i * (BAR_W + GAP);
    const y = TOP + PLOT_H - h;
    parts.push(
      `<rect x="${x}" y="${y}" width="${BAR_W}" height="${h}" fill="#4a7bd0"/>`,
      `<text x="${x + BAR_W / 2}" y="${y - 4}" text-anchor="middle">${bar.count}</text>`,
      `<text x="${x + BAR_W / 2}" y="${TOP + PLOT_H + 14}" text-anchor="middle">${bar.bits}</text>`,
      `<text x="${x + BAR_W / 2}" y="${TOP + PLOT_H + 28}" text-anchor="middle" fill="#666">` +
        `${bar.frequency.toFixed(4)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n");
}
