/** Field views of a solver snapshot: a filled contour (heatmap plus iso
 * lines) and a ridge-style surface view. A boundedness-violation contour at
 * the configured level is drawn only when the field actually crosses it. */

import { contourSegments } from "./contour.js";
import { colorFor } from "./colormap.js";
import type { FieldData } from "./csv.js";
import { Svg } from "./svg.js";

export interface FieldPlotOptions {
  /** contour level marking undershoots; drawn only if min(value) < level */
  violationLevel: number;
}

export const DEFAULT_VIOLATION_LEVEL = -0.1;

function fieldRange(field: FieldData): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const col of field.values) {
    for (const v of col) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  return [lo, hi];
}

export function hasViolation(field: FieldData, level: number): boolean {
  return fieldRange(field)[0] < level;
}

const SIZE = 640;
const MARGIN = 60;

export function renderFieldContour(
  field: FieldData,
  opts: FieldPlotOptions = { violationLevel: DEFAULT_VIOLATION_LEVEL },
): string {
  const svg = new Svg(SIZE + MARGIN * 2, SIZE + MARGIN * 2);
  const [lo, hi] = fieldRange(field);
  const cw = SIZE / field.nx;
  const ch = SIZE / field.ny;
  const px = (x: number) => MARGIN + x * SIZE;
  const py = (y: number) => MARGIN + (1 - y) * SIZE;

  for (let i = 0; i < field.nx; i++) {
    for (let j = 0; j < field.ny; j++) {
      // +0.6 pixel bleed avoids hairline gaps between cells
      svg.rect(
        MARGIN + i * cw,
        MARGIN + SIZE - (j + 1) * ch,
        cw + 0.6,
        ch + 0.6,
        colorFor(field.values[i][j], lo, hi),
      );
    }
  }

  // value contours at even fractions of the range
  for (const frac of [0.2, 0.4, 0.6, 0.8]) {
    const level = lo + frac * (hi - lo);
    for (const [x1, y1, x2, y2] of contourSegments(
      field.values, field.xCenters, field.yCenters, level,
    )) {
      svg.line(px(x1), py(y1), px(x2), py(y2), "#333", 0.6);
    }
  }

  let violated = false;
  if (hasViolation(field, opts.violationLevel)) {
    violated = true;
    for (const [x1, y1, x2, y2] of contourSegments(
      field.values, field.xCenters, field.yCenters, opts.violationLevel,
    )) {
      svg.line(px(x1), py(y1), px(x2), py(y2), "#00c000", 2.0);
    }
  }

  svg.raw(
    `<rect x="${MARGIN}" y="${MARGIN}" width="${SIZE}" height="${SIZE}" ` +
      `fill="none" stroke="#000" stroke-width="1"/>`,
  );
  svg.text(MARGIN, MARGIN - 24, `min ${lo.toPrecision(6)}  max ${hi.toPrecision(6)}`, 14);
  if (violated) {
    svg.text(
      MARGIN, MARGIN - 6,
      `violation contour at ${opts.violationLevel}`, 13, "start", "#008000",
    );
  }
  svg.text(MARGIN + SIZE / 2, MARGIN + SIZE + 34, "x", 13, "middle");
  svg.text(MARGIN - 24, MARGIN + SIZE / 2, "y", 13, "middle");
  return svg.toString();
}

export function renderFieldSurface(
  field: FieldData,
  opts: FieldPlotOptions = { violationLevel: DEFAULT_VIOLATION_LEVEL },
): string {
  // ridge view: one polyline per y row, offset upward, drawn back to front
  const width = 760;
  const height = 560;
  const svg = new Svg(width, height);
  const [lo, hi] = fieldRange(field);
  const span = hi > lo ? hi - lo : 1.0;
  const plotW = width - 2 * MARGIN;
  const rowGap = (height - 2 * MARGIN) / field.ny;
  const amp = rowGap * 14;

  for (let j = field.ny - 1; j >= 0; j--) {
    const base = MARGIN + (field.ny - 1 - j) * rowGap + amp / span;
    const pts: Array<[number, number]> = [];
    for (let i = 0; i < field.nx; i++) {
      const x = MARGIN + (i / (field.nx - 1)) * plotW;
      const y = base - ((field.values[i][j] - lo) / span) * amp * 0.08;
      pts.push([x, y]);
    }
    svg.polyline(pts, "#1a4a8a", 0.8);
  }
  svg.text(MARGIN, MARGIN - 18, `surface view, min ${lo.toPrecision(6)} max ${hi.toPrecision(6)}`, 14);
  if (hasViolation(field, opts.violationLevel)) {
    svg.text(MARGIN, height - 16, `values cross ${opts.violationLevel}`, 13, "start", "#008000");
  }
  return svg.toString();
}
