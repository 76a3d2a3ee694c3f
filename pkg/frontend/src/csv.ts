import Papa from "papaparse";

/** Raised when an input file does not match the emitting CLI's schema. */
export class SchemaError extends Error {}

export interface Table {
  fields: string[];
  rows: Record<string, string>[];
}

/**
 * Parse one CSV document into string-valued records keyed by header name.
 *
 * Numbers stay as strings here on purpose: empty cells are meaningful in the
 * smile schema (a below-intrinsic row has no vols), so each consumer decides
 * what to coerce and what to leave blank.
 */
export function parseCsv(text: string): Table {
  const res = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const fatal = res.errors.filter((e) => e.code !== "TooFewFields" && e.code !== "TooManyFields");
  if (fatal.length > 0) {
    const first = fatal[0];
    const where = first.row === undefined ? "" : ` on data row ${first.row + 1}`;
    throw new SchemaError(`CSV parse error${where}: ${first.message}`);
  }
  if (res.errors.length > 0) {
    const first = res.errors[0];
    throw new SchemaError(
      `CSV field-count mismatch on data row ${(first.row ?? 0) + 1}: ${first.message}`,
    );
  }
  return { fields: res.meta.fields ?? [], rows: res.data };
}

export function requireColumns(table: Table, needed: readonly string[], what: string): void {
  const missing = needed.filter((c) => !table.fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${what} input is missing column(s): ${missing.join(", ")} (have: ${table.fields.join(", ")})`,
    );
  }
}

/** Numeric cell value, or null when empty/unparseable. */
export function num(row: Record<string, string>, col: string): number | null {
  const raw = (row[col] ?? "").trim();
  if (raw === "") return null;
  const v = Number(raw);
  return Number.isFinite(v) ? v : null;
}
