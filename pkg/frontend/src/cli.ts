#!/usr/bin/env node
/**
 * plots smile --input smile.csv --output fig.svg [--maturity-col NAME]
 * plots rates --input compare_or_chaos.csv --output fig.svg
 *
 * Exit codes: 0 figure written; 1 warning figure written (for example an
 * empty ok-set); 2 usage or schema errors; 4 file I/O errors.  The SVG goes
 * to the output path, a one-line summary to stderr, nothing to stdout.
 */
import { parseArgs } from "node:util";
import { readFileSync, realpathSync, writeFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { SchemaError } from "./csv.js";
import { renderSmile } from "./smile.js";
import { renderRates } from "./rates.js";

const USAGE =
  "usage: plots <smile|rates> --input FILE.csv --output FILE.svg " +
  "[--maturity-col NAME] [--width PX] [--height PX] [--title TEXT]";

export interface Io {
  err(line: string): void;
}

const stderrIo: Io = { err: (line) => process.stderr.write(line + "\n") };

export function main(argv: string[], io: Io = stderrIo): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        input: { type: "string" },
        output: { type: "string" },
        "maturity-col": { type: "string" },
        width: { type: "string" },
        height: { type: "string" },
        title: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    });
  } catch (e) {
    io.err(String(e instanceof Error ? e.message : e));
    io.err(USAGE);
    return 2;
  }
  if (parsed.values.help) {
    io.err(USAGE);
    return 0;
  }
  const kind = parsed.positionals[0];
  if (kind !== "smile" && kind !== "rates") {
    io.err(`expected subcommand smile or rates, got ${kind ?? "nothing"}`);
    io.err(USAGE);
    return 2;
  }
  const input = parsed.values.input;
  const output = parsed.values.output;
  if (!input || !output) {
    io.err("--input and --output are required");
    io.err(USAGE);
    return 2;
  }
  const dim = (name: "width" | "height"): number | undefined => {
    const raw = parsed.values[name];
    if (raw === undefined) return undefined;
    const v = Number(raw);
    if (!Number.isInteger(v) || v < 120) {
      throw new SchemaError(`--${name} must be an integer >= 120, got ${raw}`);
    }
    return v;
  };

  let csvText: string;
  try {
    csvText = readFileSync(input, "utf8");
  } catch (e) {
    io.err(`cannot read ${input}: ${e instanceof Error ? e.message : e}`);
    return 4;
  }

  let svg: string;
  let warnings: string[];
  let summary: string;
  try {
    if (kind === "smile") {
      const res = renderSmile(csvText, {
        maturityCol: parsed.values["maturity-col"],
        width: dim("width"),
        panelHeight: dim("height"),
        title: parsed.values.title,
      });
      svg = res.svg;
      warnings = res.warnings;
      const excludedTotal = Object.values(res.excluded).reduce((a, b) => a + b, 0);
      summary =
        `smile: ${res.okRows} ok rows in ${res.panels.length} panel(s), ` +
        `${excludedTotal} excluded`;
    } else {
      const res = renderRates(csvText, {
        width: dim("width"),
        height: dim("height"),
        title: parsed.values.title,
      });
      svg = res.svg;
      warnings = res.warnings;
      summary =
        `rates (${res.mode}): ${res.pointCount} points` +
        (res.slope === null ? ", slope omitted" : `, fitted slope ${res.slope.toFixed(4)}`);
    }
  } catch (e) {
    if (e instanceof SchemaError) {
      io.err(e.message);
      return 2;
    }
    throw e;
  }

  try {
    writeFileSync(output, svg);
  } catch (e) {
    io.err(`cannot write ${output}: ${e instanceof Error ? e.message : e}`);
    return 4;
  }
  for (const w of warnings) io.err("warning: " + w);
  io.err(`${summary}, wrote ${output}`);
  return warnings.length > 0 ? 1 : 0;
}

// run only as an entry point (directly or through the bin symlink), not on import
let directRun = false;
if (typeof process.argv[1] === "string") {
  try {
    directRun = realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
  } catch {
    directRun = false;
  }
}
if (directRun) {
  process.exit(main(process.argv.slice(2)));
}
