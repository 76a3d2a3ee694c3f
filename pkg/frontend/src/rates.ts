import { num, parseCsv, requireColumns, SchemaError, Table } from "./csv.js";
import { axesGroup, esc, log10Scale, logTicks, padded, px, svgDocument } from "./svg.js";
import { intercept, leastSquaresSlope } from "./fit.js";

/**
 * Log-log rate figure with a least-squares slope annotation.
 *
 * Reads either of two CLI outputs and detects which from the header:
 *
 *   - `bachelier compare` rows (at-the-money only): x = sigma_sqrt_t,
 *     y = diff, the price gap between the models.  The gap is cubic in
 *     sigma*sqrt(T), so the fitted slope should land on 3.
 *   - `bachelier chaos` rows: x = t, y = mc_err squared.  The squared
 *     truncation error of a degree-N cut scales like t^(N+1).
 *
 * Rows that cannot sit on a log axis (zero or negative values) are excluded
 * and reported one by one.  With fewer than two surviving points the slope
 * annotation is omitted and whatever points remain are still drawn.
 */

export type RatesMode = "atm-gap" | "chaos";

const COMPARE_COLUMNS = [
  "strike",
  "m",
  "sigma",
  "maturity",
  "sigma_sqrt_t",
  "bachelier",
  "black_scholes",
  "diff",
  "bound",
  "atm",
] as const;

const CHAOS_COLUMNS = ["n", "t", "analytic_err", "mc_err", "mc_stderr", "bound"] as const;

export interface RatesOptions {
  width?: number;
  height?: number;
  title?: string;
}

export interface ExcludedRow {
  /** 1-based line number in the CSV file (the header is line 1). */
  line: number;
  reason: string;
}

export interface RatesResult {
  svg: string;
  mode: RatesMode;
  /** Fitted log-log slope, or null when fewer than two points survive. */
  slope: number | null;
  pointCount: number;
  excluded: ExcludedRow[];
  warnings: string[];
}

interface XY {
  x: number;
  y: number;
}

function detectMode(table: Table): RatesMode {
  if (table.fields.includes("sigma_sqrt_t") && table.fields.includes("diff")) return "atm-gap";
  if (table.fields.includes("t") && table.fields.includes("mc_err")) return "chaos";
  throw new SchemaError(
    "rates input matches neither schema: expected the compare columns " +
      `(${COMPARE_COLUMNS.join(", ")}) or the chaos columns (${CHAOS_COLUMNS.join(", ")}); ` +
      `have: ${table.fields.join(", ")}`,
  );
}

function collectAtmGap(table: Table, excluded: ExcludedRow[]): XY[] {
  const out: XY[] = [];
  table.rows.forEach((row, i) => {
    const line = i + 2;
    if ((row.atm ?? "").trim() !== "1") {
      excluded.push({ line, reason: "not an at-the-money row" });
      return;
    }
    const x = num(row, "sigma_sqrt_t");
    const y = num(row, "diff");
    if (x === null || y === null) {
      excluded.push({ line, reason: "missing sigma_sqrt_t or diff value" });
      return;
    }
    if (x <= 0 || y <= 0) {
      excluded.push({ line, reason: `non-positive value on a log axis (x=${x}, y=${y})` });
      return;
    }
    out.push({ x, y });
  });
  return out;
}

function collectChaos(table: Table, excluded: ExcludedRow[]): XY[] {
  const degrees = new Set(table.rows.map((r) => (r.n ?? "").trim()));
  if (degrees.size > 1) {
    throw new SchemaError(
      `chaos rate figure wants a single truncation degree per file, got n = ${[...degrees].sort().join(", ")}`,
    );
  }
  const out: XY[] = [];
  table.rows.forEach((row, i) => {
    const line = i + 2;
    const t = num(row, "t");
    const err = num(row, "mc_err");
    if (t === null || err === null) {
      excluded.push({ line, reason: "missing t or mc_err value" });
      return;
    }
    if (t <= 0 || err <= 0) {
      excluded.push({ line, reason: `non-positive value on a log axis (t=${t}, mc_err=${err})` });
      return;
    }
    out.push({ x: t, y: err * err });
  });
  return out;
}

const MARGIN = { left: 70, right: 18, top: 34, bottom: 50 };

export function renderRates(csvText: string, options: RatesOptions = {}): RatesResult {
  const table = parseCsv(csvText);
  const mode = detectMode(table);
  requireColumns(table, mode === "atm-gap" ? COMPARE_COLUMNS : CHAOS_COLUMNS, "rates");

  const excluded: ExcludedRow[] = [];
  const pts = (mode === "atm-gap" ? collectAtmGap : collectChaos)(table, excluded);
  pts.sort((p, q) => p.x - q.x);

  const warnings: string[] = excluded.map(
    (e) => `row at line ${e.line} excluded: ${e.reason}`,
  );

  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const title =
    options.title ??
    (mode === "atm-gap"
      ? "at-the-money price gap vs sigma*sqrt(T)"
      : "squared chaos truncation error vs horizon");
  const xLabel = mode === "atm-gap" ? "sigma * sqrt(T)" : "time t (years)";
  const yLabel =
    mode === "atm-gap" ? "price gap (normal - lognormal)" : "squared L2 truncation error";

  if (pts.length === 0) {
    warnings.push("no plottable rows; emitting a warning figure");
    const body =
      `<text class="title" x="${px(width / 2)}" y="24" text-anchor="middle" font-size="15">${esc(title)}</text>\n` +
      `<text class="warning" x="${px(width / 2)}" y="${px(height / 2)}" text-anchor="middle" ` +
      `font-size="14" fill="#a00">no usable rows: every input row was excluded</text>`;
    return {
      svg: svgDocument(width, height, body),
      mode,
      slope: null,
      pointCount: 0,
      excluded,
      warnings,
    };
  }

  const [x0, x1] = logPadded(pts.map((p) => p.x));
  const [y0, y1] = logPadded(pts.map((p) => p.y));
  const xScale = log10Scale(x0, x1, MARGIN.left, width - MARGIN.right);
  const yScale = log10Scale(y0, y1, height - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<text class="title" x="${px(width / 2)}" y="22" text-anchor="middle" font-size="15">${esc(title)}</text>`,
  );
  parts.push(
    axesGroup({
      xScale,
      yScale,
      xTicks: logTicks(x0, x1),
      yTicks: logTicks(y0, y1),
      xLabel,
      yLabel,
    }),
  );

  let slope: number | null = null;
  if (pts.length >= 2) {
    const lx = pts.map((p) => Math.log10(p.x));
    const ly = pts.map((p) => Math.log10(p.y));
    slope = leastSquaresSlope(lx, ly);
    const b = intercept(lx, ly, slope);
    const fitY = (x: number) => Math.pow(10, slope! * Math.log10(x) + b);
    parts.push(
      `<polyline class="fit-line" fill="none" stroke="#888" stroke-width="1" ` +
        `points="${px(xScale(pts[0].x))},${px(yScale(fitY(pts[0].x)))} ` +
        `${px(xScale(pts[pts.length - 1].x))},${px(yScale(fitY(pts[pts.length - 1].x)))}"/>`,
    );
    parts.push(
      `<text class="slope" x="${px(width - MARGIN.right - 6)}" y="${px(MARGIN.top + 14)}" ` +
        `text-anchor="end" font-size="13" fill="#111">fitted slope ${slope.toFixed(2)}</text>`,
    );
  } else {
    warnings.push("single point: slope annotation omitted");
  }

  for (const p of pts) {
    parts.push(
      `<circle class="point" cx="${px(xScale(p.x))}" cy="${px(yScale(p.y))}" r="3.5" ` +
        `fill="#1f4e9c" stroke="none"/>`,
    );
  }
  if (excluded.length > 0) {
    parts.push(
      `<text class="caption" x="${px(width / 2)}" y="${px(height - 8)}" text-anchor="middle" ` +
        `font-size="11" fill="#333">${esc(`${excluded.length} row${excluded.length === 1 ? "" : "s"} excluded (see stderr)`)}</text>`,
    );
  }
  return {
    svg: svgDocument(width, height, parts.join("\n")),
    mode,
    slope,
    pointCount: pts.length,
    excluded,
    warnings,
  };
}

/** Pad a positive data range multiplicatively so edge points sit inside. */
function logPadded(vals: number[]): [number, number] {
  const lo = Math.min(...vals);
  const hi = Math.max(...vals);
  if (lo === hi) return [lo / 2, hi * 2];
  const f = Math.pow(hi / lo, 0.06);
  return [lo / f, hi * f];
}
