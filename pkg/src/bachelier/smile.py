"""Quote-file ingestion and the per-quote implied-volatility comparison table.

Input CSV schema:   quote_id,s0,strike,maturity_years,kind,price,volume
Output CSV schema:  quote_id,m,bs_vol,bachelier_vol_abs,bachelier_vol_rel,atm_gap_bound,status

Puts are converted to synthetic calls through exact parity before inversion.
Rows whose call-equivalent price violates an arbitrage bound are kept and
flagged through ``status`` rather than dropped, and malformed input rows are
collected into the ingest report with their line numbers.  Output order
always equals input order.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Union

import numpy as np

from .models import NoSolutionError, ValidationError, check_positive
from .implied import implied_bachelier, implied_bs
from .pricing import bs_call_value

QUOTE_HEADER = ("quote_id", "s0", "strike", "maturity_years", "kind", "price", "volume")
SMILE_HEADER = (
    "quote_id",
    "m",
    "bs_vol",
    "bachelier_vol_abs",
    "bachelier_vol_rel",
    "atm_gap_bound",
    "status",
)

STATUS_OK = "ok"
STATUS_BELOW_INTRINSIC = "below_intrinsic"
STATUS_ABOVE_UPPER_BOUND = "above_upper_bound"
STATUS_NO_CONVERGENCE = "no_convergence"

# |m| / s0 below this counts as at the money for the implied-vol gap bound.
ATM_WINDOW = 1e-6


@dataclass(frozen=True)
class QuoteRecord:
    """One option quote in forward terms."""

    quote_id: str
    s0: float
    strike: float
    maturity: float
    kind: str
    price: float
    volume: float

    def __post_init__(self) -> None:
        if not self.quote_id:
            raise ValidationError("quote_id must be non-empty")
        object.__setattr__(self, "s0", check_positive("s0", self.s0))
        object.__setattr__(self, "strike", check_positive("strike", self.strike))
        object.__setattr__(self, "maturity", check_positive("maturity_years", self.maturity))
        if self.kind not in ("call", "put"):
            raise ValidationError(f"kind must be 'call' or 'put', got {self.kind!r}")
        object.__setattr__(self, "price", check_positive("price", self.price))
        volume = float(self.volume)
        if not math.isfinite(volume) or volume < 0.0:
            raise ValidationError(f"volume must be finite and >= 0, got {self.volume!r}")
        object.__setattr__(self, "volume", volume)

    @property
    def call_equivalent_price(self) -> float:
        """Call price implied by exact parity: C = P + s0 - strike."""
        if self.kind == "call":
            return self.price
        return self.price + self.s0 - self.strike


@dataclass(frozen=True)
class SmileRecord:
    """Implied-vol comparison for one quote; None marks an unavailable value."""

    quote_id: str
    m: float
    bs_vol: Optional[float]
    bachelier_vol_abs: Optional[float]
    bachelier_vol_rel: Optional[float]
    atm_gap_bound: Optional[float]
    status: str


@dataclass
class IngestReport:
    """Parsed quotes plus everything that did not make it through."""

    records: list[QuoteRecord] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)
    filtered_low_volume: int = 0


def _as_text(source: Union[IO[str], IO[bytes]]) -> IO[str]:
    if isinstance(source, io.TextIOBase):
        return source
    if hasattr(source, "read"):
        return io.TextIOWrapper(source, encoding="utf-8", newline="")
    raise ValidationError("source must be a readable text or byte stream")


def ingest_quotes(source: Union[IO[str], IO[bytes]], min_volume: float = 0.0) -> IngestReport:
    """Parse a quotes CSV, filtering on volume and collecting bad rows.

    Raises ValidationError on a header mismatch; per-row problems land in the
    report with their 1-based line numbers instead of raising.
    """
    if not (isinstance(min_volume, (int, float)) and math.isfinite(min_volume)):
        raise ValidationError(f"min_volume must be finite, got {min_volume!r}")
    stream = _as_text(source)
    header_line = stream.readline()
    header = tuple(header_line.strip().split(","))
    if header != QUOTE_HEADER:
        raise ValidationError(
            f"header mismatch: expected {','.join(QUOTE_HEADER)!r}, got {header_line.strip()!r}"
        )

    report = IngestReport()
    kind_map = {"C": "call", "P": "put"}
    for line_no, raw in enumerate(stream, start=2):
        line = raw.rstrip("\r\n")
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != len(QUOTE_HEADER):
            report.errors.append((line_no, f"expected {len(QUOTE_HEADER)} fields, got {len(fields)}"))
            continue
        quote_id, s0_s, strike_s, mat_s, kind_s, price_s, volume_s = fields
        if kind_s not in kind_map:
            report.errors.append((line_no, f"kind must be 'C' or 'P', got {kind_s!r}"))
            continue
        try:
            record = QuoteRecord(
                quote_id=quote_id,
                s0=float(s0_s),
                strike=float(strike_s),
                maturity=float(mat_s),
                kind=kind_map[kind_s],
                price=float(price_s),
                volume=float(volume_s),
            )
        except (ValueError, ValidationError) as exc:
            report.errors.append((line_no, str(exc)))
            continue
        if record.volume < min_volume:
            report.filtered_low_volume += 1
            continue
        report.records.append(record)
    return report


def _build_one(quote: QuoteRecord) -> SmileRecord:
    m = quote.strike - quote.s0
    call_price = quote.call_equivalent_price
    intrinsic = max(quote.s0 - quote.strike, 0.0)

    if call_price <= intrinsic:
        return SmileRecord(quote.quote_id, m, None, None, None, None, STATUS_BELOW_INTRINSIC)

    bachelier_abs: Optional[float] = None
    bachelier_rel: Optional[float] = None
    try:
        bachelier_abs = implied_bachelier(call_price, quote.s0, quote.strike, quote.maturity).vol
        bachelier_rel = bachelier_abs / quote.s0
    except NoSolutionError:
        pass

    if call_price >= quote.s0:
        return SmileRecord(
            quote.quote_id, m, None, bachelier_abs, bachelier_rel, None, STATUS_ABOVE_UPPER_BOUND
        )

    try:
        bs_vol = implied_bs(call_price, quote.s0, quote.strike, quote.maturity).vol
    except NoSolutionError:
        return SmileRecord(
            quote.quote_id, m, None, bachelier_abs, bachelier_rel, None, STATUS_NO_CONVERGENCE
        )
    if bachelier_abs is None:
        return SmileRecord(quote.quote_id, m, bs_vol, None, None, None, STATUS_NO_CONVERGENCE)

    gap_bound: Optional[float] = None
    if abs(m) <= ATM_WINDOW * quote.s0:
        gap_bound = quote.maturity * bs_vol**3 / 12.0
    return SmileRecord(quote.quote_id, m, bs_vol, bachelier_abs, bachelier_rel, gap_bound, STATUS_OK)


def build_smile(quotes: Iterable[QuoteRecord]) -> list[SmileRecord]:
    """Invert every quote under both models; never raises on a bad quote."""
    return [_build_one(q) for q in quotes]


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".17g")


def emit_smile(records: Iterable[SmileRecord], sink: IO[str]) -> None:
    """Write the comparison table: fixed column order, 17 significant digits,
    LF line endings, empty field for unavailable values."""
    sink.write(",".join(SMILE_HEADER) + "\n")
    for r in records:
        sink.write(
            ",".join(
                (
                    r.quote_id,
                    _fmt(r.m),
                    _fmt(r.bs_vol),
                    _fmt(r.bachelier_vol_abs),
                    _fmt(r.bachelier_vol_rel),
                    _fmt(r.atm_gap_bound),
                    r.status,
                )
            )
            + "\n"
        )


def parse_smile(source: Union[IO[str], IO[bytes]]) -> list[SmileRecord]:
    """Read back a table produced by ``emit_smile``."""
    stream = _as_text(source)
    header = tuple(stream.readline().strip().split(","))
    if header != SMILE_HEADER:
        raise ValidationError(f"header mismatch: expected {','.join(SMILE_HEADER)!r}")
    out = []
    for raw in stream:
        line = raw.rstrip("\r\n")
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != len(SMILE_HEADER):
            raise ValidationError(f"malformed smile row: {line!r}")

        def opt(text: str) -> Optional[float]:
            return None if text == "" else float(text)

        out.append(
            SmileRecord(
                quote_id=fields[0],
                m=float(fields[1]),
                bs_vol=opt(fields[2]),
                bachelier_vol_abs=opt(fields[3]),
                bachelier_vol_rel=opt(fields[4]),
                atm_gap_bound=opt(fields[5]),
                status=fields[6],
            )
        )
    return out


def generate_quotes(
    s0: float,
    sigma: float,
    maturities: Iterable[float],
    strikes: Iterable[float],
    seed: int,
    smile_skew: float = 0.0,
    smile_curv: float = 0.0,
) -> list[QuoteRecord]:
    """Synthetic lognormal-model quotes with an optional smile perturbation.

    Per strike K the generating volatility is
    sigma * (1 + smile_skew * x + smile_curv * x^2) with x = (K - s0) / s0,
    floored at a tiny positive value.  Strikes below s0 are quoted as puts
    (via exact parity), the rest as calls.  Volumes are drawn from a seeded
    generator, so a given seed reproduces the file byte for byte.
    """
    s0 = check_positive("s0", s0)
    sigma = check_positive("sigma", sigma)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ValidationError(f"seed must be an integer, got {seed!r}")
    rng = np.random.default_rng(seed)
    records = []
    index = 0
    for maturity in maturities:
        maturity = check_positive("maturity", maturity)
        for strike in strikes:
            strike = check_positive("strike", strike)
            x = (strike - s0) / s0
            vol = max(sigma * (1.0 + smile_skew * x + smile_curv * x * x), 1e-8)
            call_price = bs_call_value(s0, strike, vol, maturity)
            if strike < s0:
                kind, price = "put", call_price + strike - s0
            else:
                kind, price = "call", call_price
            volume = float(rng.integers(1, 500))
            records.append(
                QuoteRecord(
                    quote_id=f"q{index:04d}",
                    s0=s0,
                    strike=strike,
                    maturity=maturity,
                    kind=kind,
                    price=price,
                    volume=volume,
                )
            )
            index += 1
    return records


def quotes_to_csv(records: Iterable[QuoteRecord], sink: IO[str]) -> None:
    """Write quotes in the input schema consumed by ``ingest_quotes``."""
    sink.write(",".join(QUOTE_HEADER) + "\n")
    for r in records:
        kind = "C" if r.kind == "call" else "P"
        sink.write(
            ",".join(
                (
                    r.quote_id,
                    _fmt(r.s0),
                    _fmt(r.strike),
                    _fmt(r.maturity),
                    kind,
                    _fmt(r.price),
                    _fmt(r.volume),
                )
            )
            + "\n"
        )
