import assert from "node:assert/strict";
import { inflateSync } from "node:zlib";
import { test } from "node:test";

import { encodePng, pngDimensions, Raster } from "../src/png";

test("encodes a valid PNG container", () => {
  const raster = new Raster(3, 2);
  raster.set(0, 0, [255, 0, 0]);
  raster.set(2, 1, [0, 0, 255]);
  const buf = encodePng(raster);
  assert.deepEqual(
    Array.from(buf.subarray(0, 8)),
    [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a],
  );
  assert.deepEqual(pngDimensions(buf), { width: 3, height: 2 });
  assert.equal(buf.subarray(12, 16).toString("ascii"), "IHDR");
  assert.equal(buf.subarray(buf.length - 8, buf.length - 4).toString("ascii"), "IEND");
});

test("IDAT inflates back to the filtered raster bytes", () => {
  const raster = new Raster(2, 2, [10, 20, 30]);
  const buf = encodePng(raster);
  const idatLen = buf.readUInt32BE(33);
  const idat = buf.subarray(41, 41 + idatLen);
  const raw = inflateSync(idat);
  assert.equal(raw.length, 2 * (2 * 3 + 1));
  assert.equal(raw[0], 0); // filter byte
  assert.deepEqual(Array.from(raw.subarray(1, 7)), [10, 20, 30, 10, 20, 30]);
});

test("encoding is byte-deterministic", () => {
  const make = () => {
    const r = new Raster(16, 16);
    for (let y = 0; y < 16; y++) {
      for (let x = 0; x < 16; x++) {
        r.set(x, y, [x * 16, y * 16, (x + y) * 8]);
      }
    }
    return encodePng(r);
  };
  assert.ok(make().equals(make()));
});

test("out-of-bounds writes are ignored", () => {
  const raster = new Raster(2, 2);
  raster.set(-1, 0, [0, 0, 0]);
  raster.set(5, 5, [0, 0, 0]);
  assert.equal(raster.pixels[0], 255);
});

test("rejects empty rasters", () => {
  assert.throws(() => new Raster(0, 5));
});
