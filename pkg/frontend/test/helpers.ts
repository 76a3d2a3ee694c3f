import { execFileSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

/** Run the installed bachelier CLI; fixtures come from the real pipeline,
 * never from numbers invented here. */
export function bachelierCli(args: string[]): string {
  return execFileSync("python3", ["-m", "bachelier", ...args], {
    encoding: "utf8",
    stdio: ["ignore", "pipe", "pipe"],
  });
}

export function freshDir(prefix: string): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

export function countMatches(svg: string, pattern: RegExp): number {
  const flags = pattern.flags.includes("g") ? pattern.flags : pattern.flags + "g";
  return (svg.match(new RegExp(pattern.source, flags)) ?? []).length;
}

/** cx/cy pairs of every circle with the given class, in document order. */
export function circleCenters(svg: string, klass: string): Array<{ cx: number; cy: number }> {
  const re = new RegExp(`<circle class="${klass}" cx="([-0-9.]+)" cy="([-0-9.]+)"`, "g");
  const out: Array<{ cx: number; cy: number }> = [];
  for (const m of svg.matchAll(re)) {
    out.push({ cx: Number(m[1]), cy: Number(m[2]) });
  }
  return out;
}

/** Vertex list of the first polyline with the given class. */
export function polylinePoints(svg: string, klass: string): Array<{ x: number; y: number }> {
  const m = svg.match(new RegExp(`<polyline class="${klass}"[^>]* points="([^"]*)"`));
  if (!m) return [];
  return m[1]
    .split(/\s+/)
    .filter((s) => s.length > 0)
    .map((pair) => {
      const [x, y] = pair.split(",").map(Number);
      return { x, y };
    });
}
