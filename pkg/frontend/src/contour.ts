/** Marching-squares contour extraction on the cell-centre lattice. */

export type Segment = [number, number, number, number];

/** Line segments of the iso-level in (x, y) data coordinates. */
export function contourSegments(
  values: number[][],
  xs: number[],
  ys: number[],
  level: number,
): Segment[] {
  const nx = values.length;
  const ny = values[0].length;
  const segs: Segment[] = [];
  const lerp = (a: number, b: number, va: number, vb: number) =>
    a + ((level - va) / (vb - va)) * (b - a);

  for (let i = 0; i < nx - 1; i++) {
    for (let j = 0; j < ny - 1; j++) {
      const v00 = values[i][j];
      const v10 = values[i + 1][j];
      const v11 = values[i + 1][j + 1];
      const v01 = values[i][j + 1];
      let caseId = 0;
      if (v00 > level) caseId |= 1;
      if (v10 > level) caseId |= 2;
      if (v11 > level) caseId |= 4;
      if (v01 > level) caseId |= 8;
      if (caseId === 0 || caseId === 15) continue;

      // edge interpolation points: bottom, right, top, left
      const pts: Record<string, [number, number]> = {};
      if ((caseId & 1) !== (caseId & 2) >> 1) {
        pts.bottom = [lerp(xs[i], xs[i + 1], v00, v10), ys[j]];
      }
      if ((caseId & 2) >> 1 !== (caseId & 4) >> 2) {
        pts.right = [xs[i + 1], lerp(ys[j], ys[j + 1], v10, v11)];
      }
      if ((caseId & 8) >> 3 !== (caseId & 4) >> 2) {
        pts.top = [lerp(xs[i], xs[i + 1], v01, v11), ys[j + 1]];
      }
      if ((caseId & 1) !== (caseId & 8) >> 3) {
        pts.left = [xs[i], lerp(ys[j], ys[j + 1], v00, v01)];
      }

      const edges = Object.values(pts);
      if (edges.length === 2) {
        segs.push([edges[0][0], edges[0][1], edges[1][0], edges[1][1]]);
      } else if (edges.length === 4) {
        // saddle: connect bottom-left and top-right pairs
        segs.push([pts.bottom[0], pts.bottom[1], pts.left[0], pts.left[1]]);
        segs.push([pts.top[0], pts.top[1], pts.right[0], pts.right[1]]);
      }
    }
  }
  return segs;
}
