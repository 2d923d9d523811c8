/** CLI: render <kind> <in.csv> <out.svg>
 *
 * kinds: field_contour | field_surface | loglog_convergence
 * optional 4th argument overrides the violation-contour level (default -0.1).
 */

import { writeFileSync } from "node:fs";

import { readConvergenceCsv, readFieldCsv, SchemaError } from "./csv.js";
import {
  DEFAULT_VIOLATION_LEVEL,
  renderFieldContour,
  renderFieldSurface,
} from "./fieldPlot.js";
import { renderLogLog } from "./loglog.js";

export function render(kind: string, inPath: string, level: number): string {
  switch (kind) {
    case "field_contour":
      return renderFieldContour(readFieldCsv(inPath), { violationLevel: level });
    case "field_surface":
      return renderFieldSurface(readFieldCsv(inPath), { violationLevel: level });
    case "loglog_convergence":
      return renderLogLog(readConvergenceCsv(inPath));
    default:
      throw new SchemaError(
        `unknown plot kind "${kind}" (expected field_contour, field_surface or loglog_convergence)`,
      );
  }
}

export function main(argv: string[]): number {
  if (argv.length < 3 || argv.length > 4) {
    console.error("usage: render <kind> <in.csv> <out_image.svg> [violation_level]");
    return 2;
  }
  const [kind, inPath, outPath] = argv;
  const level = argv.length === 4 ? parseFloat(argv[3]) : DEFAULT_VIOLATION_LEVEL;
  try {
    writeFileSync(outPath, render(kind, inPath, level));
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${outPath}`);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("main.js")) {
  process.exit(main(process.argv.slice(2)));
}
