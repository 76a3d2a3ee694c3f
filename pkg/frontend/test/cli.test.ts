import { beforeAll, describe, expect, it } from "vitest";
import { execFileSync } from "node:child_process";
import { existsSync, readFileSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { main } from "../src/cli.js";
import { bachelierCli, freshDir } from "./helpers.js";

const ROOT = join(dirname(fileURLToPath(import.meta.url)), "..");

function run(args: string[]): { code: number; stderr: string } {
  const lines: string[] = [];
  const code = main(args, { err: (l) => lines.push(l) });
  return { code, stderr: lines.join("\n") };
}

let dir = "";
let smileCsv = "";
let compareCsv = "";

beforeAll(() => {
  dir = freshDir("plots-cli-");
  const quotes = join(dir, "quotes.csv");
  smileCsv = join(dir, "smile.csv");
  bachelierCli([
    "gen-quotes",
    "--s0", "100",
    "--sigma", "0.2",
    "--maturities", "1",
    "--strikes", "90,95,100,105,110",
    "--seed", "8",
    "--output", quotes,
  ]);
  bachelierCli(["smile", "--input", quotes, "--output", smileCsv]);
  compareCsv = join(dir, "compare.csv");
  writeFileSync(
    compareCsv,
    bachelierCli([
      "compare",
      "--s0", "100",
      "--vol", "0.01,0.0447,0.2,0.5",
      "--strikes", "100",
      "--maturity", "1",
    ]),
  );
});

describe("plots CLI", () => {
  it("writes a smile SVG and summarizes on stderr", () => {
    const out = join(dir, "smile.svg");
    const { code, stderr } = run(["smile", "--input", smileCsv, "--output", out]);
    expect(code).toBe(0);
    expect(stderr).toContain("smile: 5 ok rows in 1 panel(s), 0 excluded");
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain('class="bachelier-line"');
  });

  it("writes a rates SVG with the fitted slope in the summary", () => {
    const out = join(dir, "rates.svg");
    const { code, stderr } = run(["rates", "--input", compareCsv, "--output", out]);
    expect(code).toBe(0);
    expect(stderr).toMatch(/fitted slope (2\.9|3\.0)/);
    expect(readFileSync(out, "utf8")).toContain('class="fit-line"');
  });

  it("returns the warning exit code when the figure is a warning figure", () => {
    const emptyCsv = join(dir, "empty.csv");
    writeFileSync(
      emptyCsv,
      "quote_id,m,bs_vol,bachelier_vol_abs,bachelier_vol_rel,atm_gap_bound,status\n" +
        "g1,-10,,,,,below_intrinsic\n",
    );
    const out = join(dir, "warning.svg");
    const { code, stderr } = run(["smile", "--input", emptyCsv, "--output", out]);
    expect(code).toBe(1);
    expect(stderr).toContain("warning:");
    expect(readFileSync(out, "utf8")).toContain('class="warning"');
  });

  it("exit 4 when the input file does not exist", () => {
    const { code, stderr } = run([
      "smile",
      "--input", join(dir, "missing.csv"),
      "--output", join(dir, "x.svg"),
    ]);
    expect(code).toBe(4);
    expect(stderr).toContain("cannot read");
  });

  it("exit 2 on usage errors", () => {
    expect(run([]).code).toBe(2);
    expect(run(["smile"]).code).toBe(2);
    expect(run(["volcano", "--input", "a", "--output", "b"]).code).toBe(2);
    expect(run(["smile", "--input", "a", "--output", "b", "--typo", "1"]).code).toBe(2);
  });

  it("exit 2 on schema violations, with the offending columns named", () => {
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "a,b\n1,2\n");
    const { code, stderr } = run(["rates", "--input", bad, "--output", join(dir, "y.svg")]);
    expect(code).toBe(2);
    expect(stderr).toContain("neither schema");
  });

  it("runs as a compiled executable too", () => {
    const cliJs = join(ROOT, "dist", "cli.js");
    if (!existsSync(cliJs)) {
      execFileSync("node", [join(ROOT, "node_modules", "typescript", "bin", "tsc"), "-p", "tsconfig.json"], {
        cwd: ROOT,
      });
    }
    const out = join(dir, "smile-bin.svg");
    execFileSync("node", [cliJs, "smile", "--input", smileCsv, "--output", out], {
      stdio: ["ignore", "pipe", "pipe"],
    });
    expect(readFileSync(out, "utf8")).toContain('class="bs-vol"');
  });
});
