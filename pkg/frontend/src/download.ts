// Export-file naming and the browser download trigger.

export interface ExportNames {
  arch: string;
  svg: string;
  script: string;
}

/** Filenames derive from the circuit name; a fallback keeps them legal when
 * the name is missing or exotic. */
export function exportFilenames(circuitName: string | null | undefined): ExportNames {
  const safe = (circuitName ?? "").replace(/[^A-Za-z0-9_\-]/g, "");
  const stem = safe.length > 0 ? safe : "circuit";
  return {
    arch: `${stem}.qadl.arch`,
    svg: `${stem}.svg`,
    script: `${stem}.qadl`,
  };
}

export function triggerDownload(
  filename: string,
  content: string,
  mime = "application/octet-stream",
): void {
  const blob = new Blob([content], { type: mime });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  document.body.appendChild(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}
