/**
 * Color scaling for spectrogram heatmaps.
 *
 * The viridis map interpolates fixed anchor colors; inputs are first
 * normalized either linearly against the grid maximum or over a fixed
 * number of log decades below it (perturbation features of certified
 * pairs live many orders of magnitude under the peak, so the log scale is
 * the one that makes the comparison panels informative).
 */

export type RGB = [number, number, number];
export type ColorScale = "linear" | "log";

const VIRIDIS_ANCHORS: RGB[] = [
  [68, 1, 84],
  [72, 40, 120],
  [62, 74, 137],
  [49, 104, 142],
  [38, 130, 142],
  [31, 158, 137],
  [53, 183, 121],
  [109, 205, 89],
  [253, 231, 37],
];

export function viridis(t: number): RGB {
  const s = Math.max(0, Math.min(1, t)) * (VIRIDIS_ANCHORS.length - 1);
  const lo = Math.min(Math.floor(s), VIRIDIS_ANCHORS.length - 2);
  const frac = s - lo;
  const a = VIRIDIS_ANCHORS[lo];
  const b = VIRIDIS_ANCHORS[lo + 1];
  return [
    Math.round(a[0] + frac * (b[0] - a[0])),
    Math.round(a[1] + frac * (b[1] - a[1])),
    Math.round(a[2] + frac * (b[2] - a[2])),
  ];
}

export const LOG_DECADES = 8;

/** Map a magnitude to [0, 1] under the chosen scale. */
export function normalize(value: number, max: number, scale: ColorScale): number {
  if (max <= 0) return 0;
  if (scale === "linear") {
    return Math.max(0, Math.min(1, value / max));
  }
  const floor = max * Math.pow(10, -LOG_DECADES);
  if (value <= floor) return 0;
  return Math.log10(value / floor) / LOG_DECADES;
}
