// Error-marker geometry for the editor overlay: pure math so it is testable
// without a DOM. The editor is a monospaced textarea; a marker sits on the
// diagnostic's line and starts at its column.

import type { Diagnostic } from "./types.js";

export interface Marker {
  top: number; // px from the top of the text content
  left: number; // px from the left edge of the text content
  width: number; // px
  severity: string;
  title: string;
}

export function markerBoxes(
  diagnostics: Diagnostic[],
  lineHeight: number,
  charWidth: number,
): Marker[] {
  return diagnostics.map((d) => ({
    top: (d.line - 1) * lineHeight,
    left: (d.col - 1) * charWidth,
    width: Math.max(d.len, 1) * charWidth,
    severity: d.severity,
    title: `${d.line}:${d.col} ${d.message}${d.hint ? ` (${d.hint})` : ""}`,
  }));
}

/** Caret offset of a 1-based line/col position in `source`. */
export function positionToOffset(source: string, line: number, col: number): number {
  const lines = source.split("\n");
  let offset = 0;
  for (let i = 0; i < line - 1 && i < lines.length; i++) {
    offset += lines[i]!.length + 1;
  }
  return offset + col - 1;
}
