/** Blue-white-red diverging colormap over a symmetric-ish data range. */

const STOPS: Array<[number, [number, number, number]]> = [
  [0.0, [49, 54, 149]],
  [0.25, [116, 173, 209]],
  [0.5, [247, 247, 247]],
  [0.75, [244, 109, 67]],
  [1.0, [165, 0, 38]],
];

export function colorFor(value: number, lo: number, hi: number): string {
  const t = hi > lo ? Math.min(1, Math.max(0, (value - lo) / (hi - lo))) : 0.5;
  for (let k = 0; k < STOPS.length - 1; k++) {
    const [t0, c0] = STOPS[k];
    const [t1, c1] = STOPS[k + 1];
    if (t <= t1 || k === STOPS.length - 2) {
      const s = (t - t0) / (t1 - t0);
      const mix = c0.map((a, idx) => Math.round(a + Math.min(1, Math.max(0, s)) * (c1[idx] - a)));
      return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
    }
  }
  return "rgb(0,0,0)";
}
