/** What to draw.  The CLI builds one of these from its flags; library users
 * can construct it directly. */
export type FigureKind = "smile" | "bound" | "chaos-rate";

export interface FigureSpec {
  /** Paths of the input CSV file(s).  Both current kinds read exactly one. */
  inputs: string[];
  kind: FigureKind;
  /** Where the rendered SVG goes. */
  output: string;
  /** Smile only: group rows into one panel per distinct value of this column.
   * The pinned smile schema has no maturity column, so the default is a
   * single panel; pass the column name when plotting an extended CSV. */
  maturityCol?: string;
  width?: number;
  height?: number;
  title?: string;
}
