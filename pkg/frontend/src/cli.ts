#!/usr/bin/env node
/**
 * render --in grid.csv [--in other.csv] --out figure.png [--scale linear|log]
 *        [--title "..."] [--title "..."] [--cell N]
 *
 * Reads gul spectrogram CSV grids and writes a deterministic PNG heatmap
 * figure (two inputs stack as comparison panels). Exits non-zero with a
 * message on malformed CSV or a non-rectangular grid.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { ColorScale } from "./colormap";
import { CsvFormatError, parseGridCsv } from "./csv";
import { renderFigure } from "./figure";
import { encodePng } from "./png";

interface Args {
  inputs: string[];
  output: string;
  scale: ColorScale;
  titles: string[];
  cell: number;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { inputs: [], output: "", scale: "log", titles: [], cell: 4 };
  let i = 0;
  if (argv[0] === "render") i = 1; // optional subcommand form
  for (; i < argv.length; i++) {
    const flag = argv[i];
    const need = (): string => {
      if (i + 1 >= argv.length) throw new Error(`missing value for ${flag}`);
      return argv[++i];
    };
    switch (flag) {
      case "--in":
        args.inputs.push(need());
        break;
      case "--out":
        args.output = need();
        break;
      case "--scale": {
        const v = need();
        if (v !== "linear" && v !== "log") throw new Error(`bad --scale ${v}`);
        args.scale = v;
        break;
      }
      case "--title":
        args.titles.push(need());
        break;
      case "--cell":
        args.cell = Number(need());
        break;
      default:
        throw new Error(`unknown argument ${flag}`);
    }
  }
  if (args.inputs.length < 1 || args.inputs.length > 2) {
    throw new Error("provide one or two --in CSV files");
  }
  if (!args.output) {
    throw new Error("--out is required");
  }
  return args;
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`gul-figs: usage: ${(err as Error).message}`);
    return 2;
  }
  try {
    const grids = args.inputs.map((p) => parseGridCsv(readFileSync(p, "utf-8")));
    const titles = args.inputs.map(
      (p, k) => args.titles[k] ?? `${basename(p)} (${args.scale})`,
    );
    const raster = renderFigure(grids, {
      scale: args.scale,
      titles,
      cellSize: args.cell,
    });
    writeFileSync(args.output, encodePng(raster));
    console.log(`wrote ${args.output} (${raster.width}x${raster.height})`);
    return 0;
  } catch (err) {
    if (err instanceof CsvFormatError) {
      console.error(`gul-figs: csv: ${err.message}`);
    } else {
      console.error(`gul-figs: error: ${(err as Error).message}`);
    }
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
