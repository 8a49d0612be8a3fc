import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { join } from "node:path";
import { test } from "node:test";

import { argmaxCell, CsvFormatError, parseGridCsv } from "../src/csv";

const FIXTURES = join(__dirname, "..", "..", "test", "fixtures");

test("parses a pipeline fixture into a rectangular grid", () => {
  const grid = parseGridCsv(readFileSync(join(FIXTURES, "h5.csv"), "utf-8"));
  assert.equal(grid.xs.length, 61);
  assert.equal(grid.ws.length, 61);
  assert.equal(grid.values.length, 61 * 61);
  assert.equal(grid.xs[0], -3);
  assert.equal(grid.ws[grid.ws.length - 1], 3);
});

test("hermite panel peaks at radius sqrt(5/pi) ~ 1.26", () => {
  const grid = parseGridCsv(readFileSync(join(FIXTURES, "h5.csv"), "utf-8"));
  const peak = argmaxCell(grid);
  const r = Math.hypot(peak.x, peak.w);
  assert.ok(Math.abs(r - 1.2616) <= 0.05, `peak radius ${r}`);
  assert.ok(peak.value > 0.4);
});

test("small synthetic grid parses in row-major order", () => {
  const text = [
    "x,omega,magnitude",
    "0,0,1", "0,1,2",
    "1,0,3", "1,1,4",
  ].join("\n");
  const grid = parseGridCsv(text);
  assert.deepEqual(grid.xs, [0, 1]);
  assert.deepEqual(grid.ws, [0, 1]);
  assert.deepEqual(Array.from(grid.values), [1, 2, 3, 4]);
});

test("rejects wrong header", () => {
  assert.throws(() => parseGridCsv("a,b,c\n0,0,1\n"), CsvFormatError);
});

test("rejects non-rectangular grid", () => {
  const text = ["x,omega,magnitude", "0,0,1", "0,1,2", "1,0,3"].join("\n");
  assert.throws(() => parseGridCsv(text), CsvFormatError);
});

test("rejects non-numeric and negative cells", () => {
  assert.throws(() => parseGridCsv("x,omega,magnitude\n0,0,oops\n"), CsvFormatError);
  assert.throws(() => parseGridCsv("x,omega,magnitude\n0,0,-1\n"), CsvFormatError);
});

test("round-trips 17-digit values exactly", () => {
  const v = 0.33196773996650764;
  const grid = parseGridCsv(`x,omega,magnitude\n0,0,${v.toPrecision(17)}\n`);
  assert.equal(grid.values[0], v);
});
