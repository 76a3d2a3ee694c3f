export { renderSmile, SMILE_COLUMNS } from "./smile.js";
export type { SmileOptions, SmileResult, SmilePanel, SmilePoint } from "./smile.js";
export { renderRates } from "./rates.js";
export type { RatesMode, RatesOptions, RatesResult, ExcludedRow } from "./rates.js";
export { parseCsv, requireColumns, SchemaError } from "./csv.js";
export { leastSquaresSlope } from "./fit.js";
export type { FigureKind, FigureSpec } from "./spec.js";
export { main } from "./cli.js";
