"""Command-line front end.

stdout carries machine-readable CSV only; human-readable summaries and
error messages go to stderr.  Exit codes: 0 success, 2 validation error,
3 domain error (price outside bounds, no volatility solution), 4 I/O error.
Subcommands that draw random numbers (chaos, gen-quotes) require an explicit
--seed, and identical argv always produces byte-identical stdout.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from typing import IO, Iterable, Optional, Sequence

from .models import (
    BachelierParams,
    BlackScholesParams,
    NoSolutionError,
    OptionSpec,
    ValidationError,
)
from .pricing import (
    atm_gap_bound,
    bachelier_call_value,
    bs_call_value,
    price as price_option,
)
from .implied import implied_bachelier, implied_bs
from .series import (
    call_value_from_frame,
    eval_series,
    expansion_coefficients_gaussian,
    rule_of_thumb_1_report,
    rule_of_thumb_2,
)
from .chaos import ChaosExtension, mc_l2_distance
from .smile import build_smile, emit_smile, generate_quotes, ingest_quotes, quotes_to_csv


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_rows(stdout: IO[str], header: Sequence[str], rows: Iterable[Sequence]) -> None:
    stdout.write(",".join(header) + "\n")
    for row in rows:
        stdout.write(",".join(_fmt(v) for v in row) + "\n")


def _positive(value: float, flag: str) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValidationError(f"{flag} must be finite and > 0, got {value!r}")
    return float(value)


def _parse_grid(text: str, flag: str) -> list[float]:
    """Accept '3.5', 'a,b,c' or 'start:stop:step' (inclusive stop)."""
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError("range syntax is start:stop:step")
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError("need step > 0 and stop >= start")
            count = int(round((stop - start) / step))
            values = [start + i * step for i in range(count + 1)]
            return [v for v in values if v <= stop + 1e-9 * max(abs(stop), 1.0)]
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise ValidationError(f"{flag}: {exc}") from None


def _cmd_price(args, stdout, stderr) -> int:
    s0 = _positive(args.s0, "--s0")
    strike = _positive(args.strike, "--strike")
    maturity = _positive(args.maturity, "--maturity")
    vol = _positive(args.vol, "--vol")
    if args.model == "bachelier":
        params = BachelierParams(s0=s0, sigma_abs=vol, maturity=maturity)
    else:
        params = BlackScholesParams(s0=s0, sigma_rel=vol, maturity=maturity)
    spec = OptionSpec(strike=strike, kind="put" if args.put else "call")
    result = price_option(params, spec)
    _write_rows(stdout, ("price",), [(result.price,)])
    print(f"{result.model} {spec.kind} price = {result.price:.10g}", file=stderr)
    return 0


def _cmd_implied(args, stdout, stderr) -> int:
    s0 = _positive(args.s0, "--s0")
    strike = _positive(args.strike, "--strike")
    maturity = _positive(args.maturity, "--maturity")
    if not math.isfinite(args.price):
        raise ValidationError(f"--price must be finite, got {args.price!r}")
    target = args.price
    if args.put:
        target = target + s0 - strike  # exact parity: C = P + s0 - K
    solver = implied_bachelier if args.model == "bachelier" else implied_bs
    result = solver(target, s0, strike, maturity)
    _write_rows(
        stdout,
        ("vol", "iterations", "residual"),
        [(result.vol, result.iterations, result.residual)],
    )
    print(
        f"{args.model} implied vol = {result.vol:.10g} "
        f"({result.iterations} evaluations, residual {result.residual:.3g})",
        file=stderr,
    )
    return 0


def _cmd_compare(args, stdout, stderr) -> int:
    s0 = _positive(args.s0, "--s0")
    maturity = _positive(args.maturity, "--maturity")
    vols = [_positive(v, "--vol") for v in _parse_grid(args.vol, "--vol")]
    strikes = [_positive(k, "--strikes") for k in _parse_grid(args.strikes, "--strikes")]
    if not vols or not strikes:
        raise ValidationError("--vol and --strikes must produce at least one value")
    rows = []
    for sigma in vols:
        bound = atm_gap_bound(s0, sigma, maturity)
        sigma_sqrt_t = sigma * math.sqrt(maturity)
        for strike in strikes:
            cb = bachelier_call_value(s0, strike, s0 * sigma, maturity)
            cbs = bs_call_value(s0, strike, sigma, maturity)
            atm = 1 if abs(strike - s0) <= 1e-9 * s0 else 0
            rows.append(
                (strike, strike - s0, sigma, maturity, sigma_sqrt_t, cb, cbs, cb - cbs, bound, atm)
            )
    _write_rows(
        stdout,
        (
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
        ),
        rows,
    )
    print(
        f"compared {len(strikes)} strikes x {len(vols)} vols "
        f"(coupling sigma_abs = s0 * sigma)",
        file=stderr,
    )
    return 0


def _m_grid(m_max: float, steps: int) -> list[float]:
    if steps < 2:
        raise ValidationError(f"--steps must be >= 2, got {steps!r}")
    return [-m_max + 2.0 * m_max * i / (steps - 1) for i in range(steps)]


def _cmd_expand(args, stdout, stderr) -> int:
    a = _positive(args.a, "--a")
    m_max = _positive(args.m_max, "--m-max")
    if args.order not in (2, 4, 6):
        raise ValidationError(f"--order must be 2, 4 or 6, got {args.order!r}")
    coeffs = expansion_coefficients_gaussian(a, args.order)
    orders = [k for k in (2, 4, 6) if k <= args.order]
    header = ["m", "exact"]
    header += [f"series{k}" for k in orders] + [f"err{k}" for k in orders]
    rows = []
    for m in _m_grid(m_max, args.steps):
        exact = call_value_from_frame(a, m)
        approx = [eval_series(coeffs, m, order=k) for k in orders]
        rows.append([m, exact] + approx + [abs(v - exact) for v in approx])
    _write_rows(stdout, header, rows)
    print(f"expansion around the money for a = {a:g}, orders {orders}", file=stderr)
    return 0


def _cmd_thumb(args, stdout, stderr) -> int:
    m_max = _positive(args.m_max, "--m-max")
    if args.which == 1:
        a = _positive(args.a, "--a") if args.a is not None else None
        if a is None:
            raise ValidationError("--a is required for --which 1")
        rows = []
        for m in _m_grid(m_max, args.steps):
            report = rule_of_thumb_1_report(a, m)
            rows.append((report.m_over_a, report.exact, report.approx, report.abs_err))
        _write_rows(stdout, ("m_over_a", "exact", "approx", "abs_err"), rows)
        print(f"quadratic approximation table for a = {a:g}", file=stderr)
        return 0

    if args.s0 is None or args.vol is None or args.maturity is None:
        raise ValidationError("--s0, --vol and --maturity are required for --which 2")
    params = BachelierParams(
        s0=_positive(args.s0, "--s0"),
        sigma_abs=_positive(args.vol, "--vol"),
        maturity=_positive(args.maturity, "--maturity"),
    )
    a = params.atm_price
    grid = _m_grid(m_max, args.steps)
    measured = [rule_of_thumb_2(params, m) for m in grid]
    # quadratic coefficient fit of ratio - 1 against (m/a)^2, least squares
    us = [m / a for m in grid]
    denom = sum(u**4 for u in us)
    if denom == 0.0:
        raise ValidationError("--m-max too small to fit the quadratic coefficients")
    fit_a = sum((row[0] - 1.0) * u * u for row, u in zip(measured, us)) / denom
    fit_b = sum((row[1] - 1.0) * u * u for row, u in zip(measured, us)) / denom
    rows = [
        (u, row[0], row[1], row[2], row[3], fit_a, fit_b)
        for u, row in zip(us, measured)
    ]
    _write_rows(
        stdout,
        ("m_over_a", "a_ratio", "b_ratio", "predicted_a", "predicted_b", "fit_a", "fit_b"),
        rows,
    )
    print(
        f"product ratios for a = {a:g}; fitted quadratic coefficients "
        f"{fit_a:.6g} (expect {-(math.pi - 2) / (4 * math.pi):.6g}) and "
        f"{fit_b:.6g} (expect {-(math.pi - 3) / (4 * math.pi):.6g})",
        file=stderr,
    )
    return 0


def _cmd_chaos(args, stdout, stderr) -> int:
    ext = ChaosExtension(
        degree=args.degree,
        s0=_positive(args.s0, "--s0"),
        sigma=_positive(args.sigma, "--sigma"),
    )
    maturity = _positive(args.maturity, "--maturity")
    times = (
        [_positive(t, "--times") for t in _parse_grid(args.times, "--times")]
        if args.times
        else [maturity]
    )
    rows = []
    for t in times:
        report = mc_l2_distance(ext, t, args.paths, args.seed, workers=args.workers)
        rows.append(
            (report.n, report.t, report.analytic_err, report.mc_err, report.mc_stderr, report.bound)
        )
    _write_rows(stdout, ("n", "t", "analytic_err", "mc_err", "mc_stderr", "bound"), rows)
    print(
        f"degree {args.degree} truncation error at {len(times)} times, "
        f"{args.paths} paths, seed {args.seed}",
        file=stderr,
    )
    return 0


def _cmd_smile(args, stdout, stderr) -> int:
    if args.min_volume < 0:
        raise ValidationError(f"--min-volume must be >= 0, got {args.min_volume!r}")
    with open(args.input, "rb") as handle:
        report = ingest_quotes(handle, min_volume=args.min_volume)
    records = build_smile(report.records)
    with open(args.output, "w", encoding="utf-8", newline="") as sink:
        emit_smile(records, sink)
    for line_no, message in report.errors:
        print(f"line {line_no}: {message}", file=stderr)
    ok = sum(1 for r in records if r.status == "ok")
    print(
        f"parsed {len(report.records)} quotes "
        f"({report.filtered_low_volume} below volume threshold, "
        f"{len(report.errors)} malformed), wrote {len(records)} rows ({ok} ok) "
        f"to {args.output}",
        file=stderr,
    )
    return 0


def _cmd_gen_quotes(args, stdout, stderr) -> int:
    records = generate_quotes(
        s0=_positive(args.s0, "--s0"),
        sigma=_positive(args.sigma, "--sigma"),
        maturities=[_positive(t, "--maturities") for t in _parse_grid(args.maturities, "--maturities")],
        strikes=[_positive(k, "--strikes") for k in _parse_grid(args.strikes, "--strikes")],
        seed=args.seed,
        smile_skew=args.smile_skew,
        smile_curv=args.smile_curv,
    )
    with open(args.output, "w", encoding="utf-8", newline="") as sink:
        quotes_to_csv(records, sink)
    print(f"wrote {len(records)} quotes to {args.output}", file=stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bachelier",
        description="Normal and lognormal option pricing, implied vols, series "
        "diagnostics, chaos truncation errors, and the smile CSV pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("price", help="single closed-form price")
    p.add_argument("--model", choices=("bachelier", "bs"), required=True)
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--strike", type=float, required=True)
    p.add_argument("--maturity", type=float, required=True)
    p.add_argument("--vol", type=float, required=True,
                   help="absolute vol for bachelier, relative vol for bs")
    p.add_argument("--put", action="store_true")
    p.set_defaults(handler=_cmd_price)

    p = sub.add_parser("implied", help="invert a price to a volatility")
    p.add_argument("--model", choices=("bachelier", "bs"), required=True)
    p.add_argument("--price", type=float, required=True)
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--strike", type=float, required=True)
    p.add_argument("--maturity", type=float, required=True)
    p.add_argument("--put", action="store_true",
                   help="treat --price as a put quote (converted via parity)")
    p.set_defaults(handler=_cmd_implied)

    p = sub.add_parser("compare", help="both models side by side, sigma_abs = s0 * sigma")
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--maturity", type=float, required=True)
    p.add_argument("--vol", type=str, required=True,
                   help="relative vol: single value, comma list, or start:stop:step")
    p.add_argument("--strikes", type=str, required=True,
                   help="single value, comma list, or start:stop:step")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("expand", help="series truncations versus the exact value")
    p.add_argument("--a", type=float, required=True, help="at-the-money price")
    p.add_argument("--order", type=int, default=6, help="2, 4 or 6")
    p.add_argument("--m-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=21)
    p.set_defaults(handler=_cmd_expand)

    p = sub.add_parser("thumb", help="quadratic rules of thumb")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--a", type=float, help="at-the-money price (which 1)")
    p.add_argument("--s0", type=float, help="price level (which 2)")
    p.add_argument("--vol", type=float, help="absolute vol (which 2)")
    p.add_argument("--maturity", type=float, help="maturity in years (which 2)")
    p.add_argument("--m-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=21)
    p.set_defaults(handler=_cmd_thumb)

    p = sub.add_parser("chaos", help="truncation error report, analytic and Monte Carlo")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--maturity", type=float, required=True)
    p.add_argument("--paths", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--times", type=str, default=None,
                   help="evaluation times (grid syntax); default: the maturity")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=_cmd_chaos)

    p = sub.add_parser("smile", help="quotes CSV in, implied-vol comparison CSV out")
    p.add_argument("--input", type=str, required=True)
    p.add_argument("--output", type=str, required=True)
    p.add_argument("--min-volume", type=float, default=0.0)
    p.set_defaults(handler=_cmd_smile)

    p = sub.add_parser("gen-quotes", help="synthetic lognormal quote file")
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--maturities", type=str, required=True)
    p.add_argument("--strikes", type=str, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--smile-skew", type=float, default=0.0)
    p.add_argument("--smile-curv", type=float, default=0.0)
    p.add_argument("--output", type=str, required=True)
    p.set_defaults(handler=_cmd_gen_quotes)

    return parser


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[IO[str]] = None,
    stderr: Optional[IO[str]] = None,
) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args, stdout, stderr)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except NoSolutionError as exc:
        print(f"error: {exc}", file=stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return 4


def main() -> None:
    sys.exit(run())
