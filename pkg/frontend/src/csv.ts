/** Readers for the solver's CSV artifacts.
 *
 * Both schemas are strictly numeric and comma separated with one header
 * row; a missing or renamed column raises an error naming the offender so
 * schema drift is caught at the boundary.
 */

import { readFileSync } from "node:fs";

export interface FieldData {
  nx: number;
  ny: number;
  /** value[i][j] with i along x and j along y */
  values: number[][];
  xCenters: number[];
  yCenters: number[];
}

export interface ConvergenceRow {
  scheme: string;
  limiter: string;
  case_: string;
  norm: string;
  nCoarse: number;
  nFine: number;
  errCoarse: number;
  errFine: number;
  order: number;
}

export class SchemaError extends Error {}

function splitCsv(text: string): string[][] {
  return text
    .split(/\r?\n/)
    .filter((line) => line.trim().length > 0)
    .map((line) => line.split(","));
}

function columnIndex(header: string[], name: string): number {
  const idx = header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(`missing column "${name}" (found: ${header.join(", ")})`);
  }
  return idx;
}

export function readFieldCsv(path: string): FieldData {
  const rows = splitCsv(readFileSync(path, "utf8"));
  const header = rows[0];
  const ci = columnIndex(header, "i");
  const cj = columnIndex(header, "j");
  const cx = columnIndex(header, "x_center");
  const cy = columnIndex(header, "y_center");
  const cv = columnIndex(header, "value");

  let nx = 0;
  let ny = 0;
  for (const row of rows.slice(1)) {
    nx = Math.max(nx, parseInt(row[ci], 10) + 1);
    ny = Math.max(ny, parseInt(row[cj], 10) + 1);
  }
  const values: number[][] = Array.from({ length: nx }, () => new Array(ny).fill(NaN));
  const xCenters = new Array(nx).fill(NaN);
  const yCenters = new Array(ny).fill(NaN);
  for (const row of rows.slice(1)) {
    const i = parseInt(row[ci], 10);
    const j = parseInt(row[cj], 10);
    values[i][j] = parseFloat(row[cv]);
    xCenters[i] = parseFloat(row[cx]);
    yCenters[j] = parseFloat(row[cy]);
  }
  for (const col of values) {
    for (const v of col) {
      if (Number.isNaN(v)) throw new SchemaError("field csv has holes in the (i, j) grid");
    }
  }
  return { nx, ny, values, xCenters, yCenters };
}

export function readConvergenceCsv(path: string): ConvergenceRow[] {
  const rows = splitCsv(readFileSync(path, "utf8"));
  const header = rows[0];
  const idx = {
    scheme: columnIndex(header, "scheme"),
    limiter: columnIndex(header, "limiter"),
    case_: columnIndex(header, "case"),
    norm: columnIndex(header, "norm"),
    nCoarse: columnIndex(header, "n_coarse"),
    nFine: columnIndex(header, "n_fine"),
    errCoarse: columnIndex(header, "err_coarse"),
    errFine: columnIndex(header, "err_fine"),
    order: columnIndex(header, "order"),
  };
  return rows.slice(1).map((row) => ({
    scheme: row[idx.scheme],
    limiter: row[idx.limiter],
    case_: row[idx.case_],
    norm: row[idx.norm],
    nCoarse: parseInt(row[idx.nCoarse], 10),
    nFine: parseInt(row[idx.nFine], 10),
    errCoarse: parseFloat(row[idx.errCoarse]),
    errFine: parseFloat(row[idx.errFine]),
    order: parseFloat(row[idx.order]),
  }));
}
