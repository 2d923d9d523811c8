/** Log-log convergence plot with per-refinement slope annotations.
 *
 * Each (scheme, limiter, case, norm) group becomes one line over its
 * resolutions; the slope annotated between successive points is
 * log(err_coarse/err_fine)/log(2), the same quantity as the CSV's order
 * column, so the two agree to printing precision. */

import type { ConvergenceRow } from "./csv.js";
import { Svg } from "./svg.js";

const WIDTH = 760;
const HEIGHT = 560;
const MARGIN = 70;

const COLORS = ["#c23b22", "#1a4a8a", "#1f7a1f", "#7a1fa2", "#b8860b", "#008080"];

interface Series {
  label: string;
  points: Array<{ n: number; err: number }>;
  slopes: Array<{ nFine: number; value: number }>;
}

export function groupSeries(rows: ConvergenceRow[]): Series[] {
  const byKey = new Map<string, ConvergenceRow[]>();
  for (const row of rows) {
    const key = `${row.scheme} ${row.limiter} ${row.case_} ${row.norm}`;
    const list = byKey.get(key) ?? [];
    list.push(row);
    byKey.set(key, list);
  }
  const out: Series[] = [];
  for (const [label, group] of byKey) {
    group.sort((a, b) => a.nCoarse - b.nCoarse);
    const points = [{ n: group[0].nCoarse, err: group[0].errCoarse }];
    const slopes = [];
    for (const row of group) {
      points.push({ n: row.nFine, err: row.errFine });
      slopes.push({
        nFine: row.nFine,
        value: Math.log(row.errCoarse / row.errFine) / Math.log(2),
      });
    }
    out.push({ label, points, slopes });
  }
  return out;
}

export function renderLogLog(rows: ConvergenceRow[]): string {
  const series = groupSeries(rows);
  const svg = new Svg(WIDTH, HEIGHT);

  const ns = series.flatMap((s) => s.points.map((p) => p.n));
  const errs = series.flatMap((s) => s.points.map((p) => p.err));
  const lx0 = Math.log10(Math.min(...ns) / 1.3);
  const lx1 = Math.log10(Math.max(...ns) * 1.3);
  const ly0 = Math.log10(Math.min(...errs) / 2);
  const ly1 = Math.log10(Math.max(...errs) * 2);
  const px = (n: number) => MARGIN + ((Math.log10(n) - lx0) / (lx1 - lx0)) * (WIDTH - 2 * MARGIN);
  const py = (e: number) =>
    HEIGHT - MARGIN - ((Math.log10(e) - ly0) / (ly1 - ly0)) * (HEIGHT - 2 * MARGIN);

  // decade gridlines
  for (let d = Math.ceil(ly0); d <= Math.floor(ly1); d++) {
    svg.line(MARGIN, py(10 ** d), WIDTH - MARGIN, py(10 ** d), "#ddd", 1);
    svg.text(MARGIN - 8, py(10 ** d) + 4, `1e${d}`, 11, "end");
  }
  for (const n of [...new Set(ns)].sort((a, b) => a - b)) {
    svg.line(px(n), MARGIN, px(n), HEIGHT - MARGIN, "#eee", 1);
    svg.text(px(n), HEIGHT - MARGIN + 18, String(n), 11, "middle");
  }

  series.forEach((s, idx) => {
    const color = COLORS[idx % COLORS.length];
    svg.polyline(s.points.map((p) => [px(p.n), py(p.err)]), color);
    for (const p of s.points) svg.circle(px(p.n), py(p.err), 3, color);
    for (const slope of s.slopes) {
      const at = s.points.find((p) => p.n === slope.nFine)!;
      const prev = s.points[s.points.findIndex((p) => p.n === slope.nFine) - 1];
      const midX = (px(prev.n) + px(at.n)) / 2;
      const midY = (py(prev.err) + py(at.err)) / 2;
      svg.text(midX + 6, midY - 6, `slope ${slope.value.toFixed(2)}`, 11, "start", color);
    }
    svg.text(WIDTH - MARGIN, MARGIN + 16 * (idx + 1), s.label, 12, "end", color);
  });

  svg.raw(
    `<rect x="${MARGIN}" y="${MARGIN}" width="${WIDTH - 2 * MARGIN}" ` +
      `height="${HEIGHT - 2 * MARGIN}" fill="none" stroke="#000"/>`,
  );
  svg.text(WIDTH / 2, HEIGHT - 24, "cells per direction", 13, "middle");
  svg.text(18, HEIGHT / 2, "relative error", 13, "middle");
  return svg.toString();
}
