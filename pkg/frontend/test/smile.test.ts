import { beforeAll, describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import { renderSmile, SchemaError } from "../src/smile.js";
import { parseCsv, num } from "../src/csv.js";
import { bachelierCli, circleCenters, countMatches, freshDir, polylinePoints } from "./helpers.js";

// A real fixture, produced by the pipeline that feeds this figure in
// production: flat 20% lognormal quotes, one maturity, five strikes.
let pipelineCsv = "";

beforeAll(() => {
  const dir = freshDir("plots-smile-");
  const quotes = join(dir, "quotes.csv");
  const smile = join(dir, "smile.csv");
  bachelierCli([
    "gen-quotes",
    "--s0", "100",
    "--sigma", "0.2",
    "--maturities", "1",
    "--strikes", "90,95,100,105,110",
    "--seed", "8",
    "--output", quotes,
  ]);
  bachelierCli(["smile", "--input", quotes, "--output", smile]);
  pipelineCsv = readFileSync(smile, "utf8");
});

describe("smile figure from the pipeline fixture", () => {
  it("draws one circle per ok row and a single dotted bachelier line", () => {
    const res = renderSmile(pipelineCsv);
    expect(res.okRows).toBe(5);
    expect(res.warnings).toEqual([]);
    expect(countMatches(res.svg, /<circle class="bs-vol"/)).toBe(5);
    expect(countMatches(res.svg, /<polyline class="bachelier-line"/)).toBe(1);
    expect(res.svg).toContain('stroke-dasharray="2 4"');
    expect(polylinePoints(res.svg, "bachelier-line")).toHaveLength(5);
    expect(res.svg).toContain("none excluded");
  });

  it("puts the dotted line below the circles at the money, within the cubic bound", () => {
    // data side first: the vol gap at m = 0 obeys sigma^3 T / 12
    const rows = parseCsv(pipelineCsv).rows;
    const atm = rows.find((r) => num(r, "m") === 0)!;
    const gap = num(atm, "bs_vol")! - num(atm, "bachelier_vol_rel")!;
    expect(gap).toBeGreaterThan(0);
    expect(gap).toBeLessThan((0.2 ** 3 * 1.0) / 12);

    // figure side: smaller vol means larger y pixel, so the line vertex at
    // the ATM abscissa sits strictly below the ATM circle
    const res = renderSmile(pipelineCsv);
    const circles = circleCenters(res.svg, "bs-vol");
    const verts = polylinePoints(res.svg, "bachelier-line");
    const atmIdx = 2; // strikes 90..110 sorted by m, ATM in the middle
    expect(verts[atmIdx].x).toBeCloseTo(circles[atmIdx].cx, 5);
    expect(verts[atmIdx].y).toBeGreaterThan(circles[atmIdx].cy);
  });

  it("is a pure function of the CSV text", () => {
    const a = renderSmile(pipelineCsv);
    const b = renderSmile(pipelineCsv);
    expect(b.svg).toBe(a.svg);
  });
});

const THREE_ROW_FIXTURE = [
  "quote_id,m,bs_vol,bachelier_vol_abs,bachelier_vol_rel,atm_gap_bound,status",
  "g0,5,0.25,25.586598341467337,0.25586598341467337,,ok",
  "g1,-10,,,,,below_intrinsic",
  "g2,-5,,349.1017987271922,3.4910179872719223,,above_upper_bound",
  "",
].join("\n");

describe("structural golden check on the 3-row fixture", () => {
  it("renders one circle, labels both axes, and counts the excluded rows", () => {
    const res = renderSmile(THREE_ROW_FIXTURE);
    expect(res.okRows).toBe(1);
    expect(res.excluded).toEqual({ below_intrinsic: 1, above_upper_bound: 1 });
    expect(countMatches(res.svg, /<circle class="bs-vol"/)).toBe(1);
    expect(countMatches(res.svg, /<polyline class="bachelier-line"/)).toBe(1);
    expect(res.svg).toContain(">moneyness m = strike - spot</text>");
    expect(res.svg).toContain(">implied volatility</text>");
    expect(res.svg).toContain("excluded 2: above_upper_bound 1, below_intrinsic 1");
  });
});

describe("degenerate and malformed inputs", () => {
  it("emits an annotated warning figure when no row has status ok", () => {
    const text = THREE_ROW_FIXTURE.split("\n")
      .filter((line) => !line.startsWith("g0"))
      .join("\n");
    const res = renderSmile(text);
    expect(res.okRows).toBe(0);
    expect(res.warnings.length).toBeGreaterThan(0);
    expect(res.svg).toContain('class="warning"');
    expect(res.svg).toContain("no usable rows");
    expect(countMatches(res.svg, /<circle /)).toBe(0);
  });

  it("rejects input with a missing schema column, naming it", () => {
    const text = [
      "quote_id,m,bs_vol,bachelier_vol_abs,bachelier_vol_rel,atm_gap_bound",
      "g0,5,0.25,25.6,0.256,",
      "",
    ].join("\n");
    expect(() => renderSmile(text)).toThrow(SchemaError);
    expect(() => renderSmile(text)).toThrow(/status/);
  });

  it("rejects a panel-grouping column that is not in the file", () => {
    expect(() => renderSmile(THREE_ROW_FIXTURE, { maturityCol: "maturity" })).toThrow(
      /maturity/,
    );
  });
});

describe("per-maturity panels", () => {
  const EXTENDED = [
    "quote_id,m,bs_vol,bachelier_vol_abs,bachelier_vol_rel,atm_gap_bound,status,maturity",
    "a0,-5,0.21,20.5,0.205,,ok,0.25",
    "a1,0,0.2,19.95,0.1995,,ok,0.25",
    "a2,5,0.21,20.6,0.206,,ok,0.25",
    "b0,-5,0.22,21.0,0.21,,ok,1",
    "b1,0,0.2,19.9,0.199,,ok,1",
    "",
  ].join("\n");

  it("splits rows into one panel per distinct maturity value", () => {
    const res = renderSmile(EXTENDED, { maturityCol: "maturity" });
    expect(res.panels.map((p) => p.label)).toEqual(["0.25", "1"]);
    expect(res.panels.map((p) => p.points.length)).toEqual([3, 2]);
    expect(countMatches(res.svg, /<g class="panel"/)).toBe(2);
    expect(countMatches(res.svg, /<polyline class="bachelier-line"/)).toBe(2);
    expect(countMatches(res.svg, /<circle class="bs-vol"/)).toBe(5);
    expect(res.svg).toContain("maturity = 0.25");
    expect(res.svg).toContain("maturity = 1");
  });

  it("keeps a single unlabeled panel by default", () => {
    const res = renderSmile(EXTENDED);
    expect(res.panels).toHaveLength(1);
    expect(res.panels[0].points).toHaveLength(5);
    expect(countMatches(res.svg, /<g class="panel"/)).toBe(1);
  });
});
