/**
 * Parser for the spectrogram CSV contract produced by the gul CLI:
 * header `x,omega,magnitude`, one row per cell, row-major with x outer,
 * 17-significant-digit decimals.
 */

export interface Grid {
  /** ascending x coordinates (rows) */
  xs: number[];
  /** ascending omega coordinates (columns) */
  ws: number[];
  /** values[i * ws.length + j] = magnitude at (xs[i], ws[j]) */
  values: Float64Array;
}

export class CsvFormatError extends Error {}

export function parseGridCsv(text: string): Grid {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError("empty CSV");
  }
  if (lines[0].trim() !== "x,omega,magnitude") {
    throw new CsvFormatError(`unexpected header: ${JSON.stringify(lines[0])}`);
  }

  const xsSeen: number[] = [];
  const wsSeen: number[] = [];
  const rows: Array<[number, number, number]> = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 3) {
      throw new CsvFormatError(`malformed row ${i + 1}: ${JSON.stringify(lines[i])}`);
    }
    const x = Number(parts[0]);
    const w = Number(parts[1]);
    const v = Number(parts[2]);
    if (!Number.isFinite(x) || !Number.isFinite(w) || !Number.isFinite(v)) {
      throw new CsvFormatError(`non-numeric row ${i + 1}: ${JSON.stringify(lines[i])}`);
    }
    if (v < 0) {
      throw new CsvFormatError(`negative magnitude in row ${i + 1}`);
    }
    if (xsSeen.length === 0 || x !== xsSeen[xsSeen.length - 1]) {
      xsSeen.push(x);
    }
    if (xsSeen.length === 1) {
      wsSeen.push(w);
    }
    rows.push([x, w, v]);
  }

  const nX = xsSeen.length;
  const nW = wsSeen.length;
  if (rows.length !== nX * nW) {
    throw new CsvFormatError(
      `grid is not rectangular: ${rows.length} cells for ${nX} x ${nW}`,
    );
  }

  const values = new Float64Array(nX * nW);
  for (let i = 0; i < nX; i++) {
    for (let j = 0; j < nW; j++) {
      const [x, w, v] = rows[i * nW + j];
      if (x !== xsSeen[i] || w !== wsSeen[j]) {
        throw new CsvFormatError(
          `row order violates row-major contract near x=${x}, omega=${w}`,
        );
      }
      values[i * nW + j] = v;
    }
  }
  return { xs: xsSeen, ws: wsSeen, values };
}

export function gridMax(grid: Grid): number {
  let m = 0;
  for (const v of grid.values) {
    if (v > m) m = v;
  }
  return m;
}

/** Location (x, omega) of the largest magnitude cell. */
export function argmaxCell(grid: Grid): { x: number; w: number; value: number } {
  let best = 0;
  for (let k = 1; k < grid.values.length; k++) {
    if (grid.values[k] > grid.values[best]) best = k;
  }
  const nW = grid.ws.length;
  return {
    x: grid.xs[Math.floor(best / nW)],
    w: grid.ws[best % nW],
    value: grid.values[best],
  };
}
