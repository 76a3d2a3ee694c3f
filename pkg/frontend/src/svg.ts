/**
 * Just enough SVG assembly for the two figure kinds.  No plotting library:
 * the output must be a pure function of the input CSV, and hand-built markup
 * with fixed-precision coordinates is byte-for-byte reproducible.
 */

/** Pixel coordinate, fixed to 2 decimals so re-renders are identical. */
export function px(v: number): string {
  // avoid "-0.00"
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  f.domain = [d0, d1];
  f.range = [r0, r1];
  return f;
}

/** Maps log10(v); the domain is given in data units and must be positive. */
export function log10Scale(d0: number, d1: number, r0: number, r1: number): Scale {
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0;
  const f = ((v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0)) as Scale;
  f.domain = [d0, d1];
  f.range = [r0, r1];
  return f;
}

/** Pad a [lo, hi] data interval by a fraction on both sides; degenerate
 * intervals get an absolute pad so a single point still renders mid-axis. */
export function padded(lo: number, hi: number, frac = 0.08): [number, number] {
  if (lo === hi) {
    const pad = Math.max(Math.abs(lo) * frac, 0.05);
    return [lo - pad, hi + pad];
  }
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("e+", "e");
  return String(Number(v.toPrecision(3)));
}

/** Evenly spaced linear ticks, endpoints included. */
export function linearTicks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) out.push(lo + ((hi - lo) * i) / (count - 1));
  return out;
}

/** Decade ticks inside a positive range; falls back to log-evenly-spaced
 * positions when the range spans less than one full decade. */
export function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let p = Math.ceil(Math.log10(lo)); Math.pow(10, p) <= hi * (1 + 1e-12); p++) {
    out.push(Math.pow(10, p));
  }
  if (out.length >= 2) return out;
  const l0 = Math.log10(lo);
  const l1 = Math.log10(hi);
  return [0, 1 / 3, 2 / 3, 1].map((f) => Math.pow(10, l0 + f * (l1 - l0)));
}

export interface AxisSpec {
  xScale: Scale;
  yScale: Scale;
  xTicks: number[];
  yTicks: number[];
  xLabel: string;
  yLabel: string;
}

/** Axis lines, tick marks, tick labels, and the two axis labels. */
export function axesGroup(a: AxisSpec): string {
  const [x0, x1] = a.xScale.range;
  const [yTop, yBot] = [Math.min(...a.yScale.range), Math.max(...a.yScale.range)];
  const parts: string[] = ['<g class="axes" stroke="#444" fill="none">'];
  parts.push(`<line x1="${px(x0)}" y1="${px(yBot)}" x2="${px(x1)}" y2="${px(yBot)}"/>`);
  parts.push(`<line x1="${px(x0)}" y1="${px(yTop)}" x2="${px(x0)}" y2="${px(yBot)}"/>`);
  for (const t of a.xTicks) {
    const x = a.xScale(t);
    parts.push(`<line x1="${px(x)}" y1="${px(yBot)}" x2="${px(x)}" y2="${px(yBot + 5)}"/>`);
    parts.push(
      `<text class="tick" x="${px(x)}" y="${px(yBot + 18)}" text-anchor="middle" ` +
        `fill="#444" stroke="none" font-size="11">${esc(tickLabel(t))}</text>`,
    );
  }
  for (const t of a.yTicks) {
    const y = a.yScale(t);
    parts.push(`<line x1="${px(x0 - 5)}" y1="${px(y)}" x2="${px(x0)}" y2="${px(y)}"/>`);
    parts.push(
      `<text class="tick" x="${px(x0 - 8)}" y="${px(y + 4)}" text-anchor="end" ` +
        `fill="#444" stroke="none" font-size="11">${esc(tickLabel(t))}</text>`,
    );
  }
  const xMid = (x0 + x1) / 2;
  const yMid = (yTop + yBot) / 2;
  parts.push(
    `<text class="x-label" x="${px(xMid)}" y="${px(yBot + 36)}" text-anchor="middle" ` +
      `fill="#111" stroke="none" font-size="13">${esc(a.xLabel)}</text>`,
  );
  parts.push(
    `<text class="y-label" x="${px(x0 - 48)}" y="${px(yMid)}" text-anchor="middle" ` +
      `fill="#111" stroke="none" font-size="13" ` +
      `transform="rotate(-90 ${px(x0 - 48)} ${px(yMid)})">${esc(a.yLabel)}</text>`,
  );
  parts.push("</g>");
  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}
