/** Slope of the ordinary least-squares line through the points. */
export function leastSquaresSlope(xs: readonly number[], ys: readonly number[]): number {
  if (xs.length !== ys.length || xs.length < 2) {
    throw new Error(`need at least two paired points, got ${xs.length}/${ys.length}`);
  }
  const n = xs.length;
  let mx = 0;
  let my = 0;
  for (let i = 0; i < n; i++) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  let cov = 0;
  let varX = 0;
  for (let i = 0; i < n; i++) {
    cov += (xs[i] - mx) * (ys[i] - my);
    varX += (xs[i] - mx) * (xs[i] - mx);
  }
  if (varX === 0) {
    throw new Error("x values are all identical; slope is undefined");
  }
  return cov / varX;
}

export function intercept(xs: readonly number[], ys: readonly number[], slope: number): number {
  let mx = 0;
  let my = 0;
  for (let i = 0; i < xs.length; i++) {
    mx += xs[i];
    my += ys[i];
  }
  return my / ys.length - (slope * mx) / xs.length;
}
