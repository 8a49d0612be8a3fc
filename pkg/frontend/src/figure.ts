/**
 * Figure composition: one or two heatmap panels stacked vertically, each
 * with a title bar, a framed nearest-neighbor-scaled heatmap and corner
 * axis tick labels. A pure function of (grids, spec): no timestamps, no
 * randomness, so repeated renders are pixel-identical.
 */

import { ColorScale, normalize, viridis } from "./colormap";
import { Grid, gridMax } from "./csv";
import { Raster } from "./png";
import { drawText, GLYPH_HEIGHT, textWidth } from "./font";

export interface FigureSpec {
  scale: ColorScale;
  titles?: string[];
  xLabel?: string;
  yLabel?: string;
  /** pixels per data cell (nearest neighbor), default 4 */
  cellSize?: number;
}

const MARGIN = 12;
const TITLE_H = GLYPH_HEIGHT + 8;
const LABEL_H = GLYPH_HEIGHT + 6;
const FRAME: [number, number, number] = [40, 40, 40];
const BG: [number, number, number] = [255, 255, 255];
const TEXT: [number, number, number] = [20, 20, 20];

function fmt(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function drawPanel(
  raster: Raster,
  grid: Grid,
  x0: number,
  y0: number,
  cell: number,
  scale: ColorScale,
  title: string,
  xLabel: string,
  yLabel: string,
): number {
  const nX = grid.xs.length;
  const nW = grid.ws.length;
  const plotW = nX * cell;
  const plotH = nW * cell;
  const max = gridMax(grid);

  drawText(raster, x0, y0, title, TEXT);
  const top = y0 + TITLE_H;

  // heatmap: x runs right, omega runs up
  for (let i = 0; i < nX; i++) {
    for (let j = 0; j < nW; j++) {
      const t = normalize(grid.values[i * nW + j], max, scale);
      raster.fillRect(x0 + i * cell, top + (nW - 1 - j) * cell, cell, cell, viridis(t));
    }
  }

  // frame
  for (let x = x0 - 1; x <= x0 + plotW; x++) {
    raster.set(x, top - 1, FRAME);
    raster.set(x, top + plotH, FRAME);
  }
  for (let y = top - 1; y <= top + plotH; y++) {
    raster.set(x0 - 1, y, FRAME);
    raster.set(x0 + plotW, y, FRAME);
  }

  // corner ticks and axis labels
  const below = top + plotH + 4;
  drawText(raster, x0, below, `${xLabel}=${fmt(grid.xs[0])}`, TEXT);
  const rightTick = `${fmt(grid.xs[nX - 1])}`;
  drawText(raster, x0 + plotW - textWidth(rightTick), below, rightTick, TEXT);
  drawText(raster, x0, top + 2, `${yLabel}=${fmt(grid.ws[nW - 1])}`, TEXT);
  drawText(raster, x0, top + plotH - GLYPH_HEIGHT - 2, `${fmt(grid.ws[0])}`, TEXT);

  return TITLE_H + plotH + LABEL_H + 6;
}

export function renderFigure(grids: Grid[], spec: FigureSpec): Raster {
  if (grids.length < 1 || grids.length > 2) {
    throw new Error("figure takes one or two grids");
  }
  const cell = spec.cellSize ?? 4;
  if (cell < 1 || !Number.isInteger(cell)) {
    throw new Error("cellSize must be a positive integer");
  }
  const xLabel = spec.xLabel ?? "x";
  const yLabel = spec.yLabel ?? "w";

  const widths = grids.map((g) => g.xs.length * cell);
  const width = Math.max(...widths) + 2 * MARGIN;
  const heights = grids.map((g) => TITLE_H + g.ws.length * cell + LABEL_H + 6);
  const height = heights.reduce((a, b) => a + b, 0) + 2 * MARGIN;

  const raster = new Raster(width, height, BG);
  let y = MARGIN;
  grids.forEach((grid, k) => {
    const title = spec.titles?.[k] ?? `panel ${k + 1} (${spec.scale})`;
    y += drawPanel(raster, grid, MARGIN, y, cell, spec.scale, title, xLabel, yLabel);
  });
  return raster;
}
