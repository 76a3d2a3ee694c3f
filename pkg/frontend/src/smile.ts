import { num, parseCsv, requireColumns, SchemaError } from "./csv.js";
import {
  axesGroup,
  esc,
  linearScale,
  linearTicks,
  padded,
  px,
  svgDocument,
} from "./svg.js";

/**
 * Implied-volatility smile figure.
 *
 * Input is the comparison CSV emitted by `bachelier smile`.  Rows with
 * status "ok" contribute a circle at (m, bs_vol) and a vertex of the dotted
 * Bachelier line at (m, bachelier_vol_rel); every other row is left out and
 * tallied in the caption.  The x axis is moneyness m = strike - spot, which
 * is what the schema carries (the file has no raw strike column), with
 * implied vol on y.
 */

export const SMILE_COLUMNS = [
  "quote_id",
  "m",
  "bs_vol",
  "bachelier_vol_abs",
  "bachelier_vol_rel",
  "atm_gap_bound",
  "status",
] as const;

export interface SmileOptions {
  maturityCol?: string;
  width?: number;
  panelHeight?: number;
  title?: string;
}

export interface SmilePoint {
  m: number;
  bsVol: number;
  bachelierVolRel: number;
}

export interface SmilePanel {
  label: string;
  points: SmilePoint[];
}

export interface SmileResult {
  svg: string;
  okRows: number;
  /** status -> how many rows were excluded with it */
  excluded: Record<string, number>;
  panels: SmilePanel[];
  warnings: string[];
}

const MARGIN = { left: 64, right: 16, top: 34, bottom: 50 };

export function renderSmile(csvText: string, options: SmileOptions = {}): SmileResult {
  const table = parseCsv(csvText);
  requireColumns(table, SMILE_COLUMNS, "smile");
  if (options.maturityCol !== undefined) {
    requireColumns(table, [options.maturityCol], "smile (panel grouping)");
  }

  const excluded: Record<string, number> = {};
  const groups = new Map<string, SmilePoint[]>();
  for (const row of table.rows) {
    const status = (row.status ?? "").trim();
    const m = num(row, "m");
    const bsVol = num(row, "bs_vol");
    const bRel = num(row, "bachelier_vol_rel");
    if (status !== "ok" || m === null || bsVol === null || bRel === null) {
      const key = status === "ok" ? "unparseable" : status || "blank";
      excluded[key] = (excluded[key] ?? 0) + 1;
      continue;
    }
    const label = options.maturityCol ? (row[options.maturityCol] ?? "").trim() : "";
    const bucket = groups.get(label);
    if (bucket) bucket.push({ m, bsVol, bachelierVolRel: bRel });
    else groups.set(label, [{ m, bsVol, bachelierVolRel: bRel }]);
  }

  const labels = [...groups.keys()].sort((a, b) => {
    const na = Number(a);
    const nb = Number(b);
    if (Number.isFinite(na) && Number.isFinite(nb)) return na - nb;
    return a < b ? -1 : a > b ? 1 : 0;
  });
  const panels: SmilePanel[] = labels.map((label) => ({
    label,
    points: groups.get(label)!.slice().sort((p, q) => p.m - q.m),
  }));
  const okRows = panels.reduce((acc, p) => acc + p.points.length, 0);

  const width = options.width ?? 640;
  const panelHeight = options.panelHeight ?? 320;
  const title = options.title ?? "implied volatility smile";
  const warnings: string[] = [];

  const captionParts: string[] = [`${okRows} ok row${okRows === 1 ? "" : "s"} plotted`];
  const excludedTotal = Object.values(excluded).reduce((a, b) => a + b, 0);
  if (excludedTotal > 0) {
    const detail = Object.keys(excluded)
      .sort()
      .map((k) => `${k} ${excluded[k]}`)
      .join(", ");
    captionParts.push(`excluded ${excludedTotal}: ${detail}`);
  } else {
    captionParts.push("none excluded");
  }
  const caption = captionParts.join("; ");

  if (okRows === 0) {
    warnings.push("no rows with status ok; emitting a warning figure");
    const height = 160;
    const body =
      `<text class="title" x="${px(width / 2)}" y="24" text-anchor="middle" font-size="15">${esc(title)}</text>\n` +
      `<text class="warning" x="${px(width / 2)}" y="${px(height / 2)}" text-anchor="middle" ` +
      `font-size="14" fill="#a00">no usable rows: every input row was excluded</text>\n` +
      `<text class="caption" x="${px(width / 2)}" y="${px(height - 16)}" text-anchor="middle" ` +
      `font-size="12" fill="#333">${esc(caption)}</text>`;
    return { svg: svgDocument(width, height, body), okRows, excluded, panels, warnings };
  }

  const parts: string[] = [];
  parts.push(
    `<text class="title" x="${px(width / 2)}" y="22" text-anchor="middle" font-size="15">${esc(title)}</text>`,
  );
  let yCursor = 28;
  for (const panel of panels) {
    parts.push(renderPanel(panel, width, panelHeight, yCursor, options.maturityCol));
    yCursor += panelHeight;
  }
  const height = yCursor + 28;
  parts.push(
    `<text class="caption" x="${px(width / 2)}" y="${px(height - 10)}" text-anchor="middle" ` +
      `font-size="12" fill="#333">${esc(caption)}</text>`,
  );
  return { svg: svgDocument(width, height, parts.join("\n")), okRows, excluded, panels, warnings };
}

function renderPanel(
  panel: SmilePanel,
  width: number,
  panelHeight: number,
  yOffset: number,
  maturityCol?: string,
): string {
  const pts = panel.points;
  const xs = pts.map((p) => p.m);
  const ys = pts.flatMap((p) => [p.bsVol, p.bachelierVolRel]);
  const [x0, x1] = padded(Math.min(...xs), Math.max(...xs));
  const [y0, y1] = padded(Math.min(...ys), Math.max(...ys));
  const xScale = linearScale(x0, x1, MARGIN.left, width - MARGIN.right);
  const yScale = linearScale(y0, y1, yOffset + panelHeight - MARGIN.bottom, yOffset + MARGIN.top);

  const parts: string[] = [`<g class="panel" data-label="${esc(panel.label)}">`];
  if (maturityCol) {
    parts.push(
      `<text class="panel-label" x="${px(width - MARGIN.right)}" y="${px(yOffset + MARGIN.top - 8)}" ` +
        `text-anchor="end" font-size="12" fill="#333">${esc(`${maturityCol} = ${panel.label}`)}</text>`,
    );
  }
  parts.push(
    axesGroup({
      xScale,
      yScale,
      xTicks: linearTicks(x0, x1),
      yTicks: linearTicks(y0, y1),
      xLabel: "moneyness m = strike - spot",
      yLabel: "implied volatility",
    }),
  );
  const lineVerts = pts.map((p) => `${px(xScale(p.m))},${px(yScale(p.bachelierVolRel))}`).join(" ");
  parts.push(
    `<polyline class="bachelier-line" fill="none" stroke="#1f4e9c" stroke-width="1.5" ` +
      `stroke-dasharray="2 4" points="${lineVerts}"/>`,
  );
  for (const p of pts) {
    parts.push(
      `<circle class="bs-vol" cx="${px(xScale(p.m))}" cy="${px(yScale(p.bsVol))}" r="3.5" ` +
        `fill="none" stroke="#b03030" stroke-width="1.5"/>`,
    );
  }
  parts.push("</g>");
  return parts.join("\n");
}

export { SchemaError };
