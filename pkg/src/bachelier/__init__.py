"""Normal (Bachelier) and lognormal (Black-Scholes) pricing side by side.

The package covers closed-form forward prices, implied volatilities for both
conventions, how far apart the two models can drift at the money, a small
series toolkit around the at-the-money point, quadratic shortcut formulas with
their inversion, a call-put reciprocity map, and a Hermite chaos view of the
lognormal terminal value with exact truncation error bounds.
"""

from .models import (
    SQRT_TWO_PI,
    BachelierParams,
    BlackScholesParams,
    MoneynessFrame,
    NoSolutionError,
    OptionSpec,
    ValidationError,
    bachelier_terminal_density,
    std_normal_cdf,
    std_normal_pdf,
)
from .pricing import (
    PriceResult,
    atm_binary_and_dirac,
    atm_gap_bound,
    bachelier_call,
    bachelier_call_value,
    bachelier_put,
    bachelier_put_value,
    bs_call,
    bs_call_value,
    bs_put,
    bs_put_value,
    price,
)
from .implied import (
    ImpliedVolResult,
    atm_implied_bachelier,
    implied_bachelier,
    implied_bs,
    implied_vol_gap_bound,
)
from .series import (
    DensityEvaluator,
    ExpansionCoefficients,
    ThumbReport,
    bs_displacement_density,
    call_value_from_frame,
    dimensionless_F,
    eval_series,
    expansion_coefficients_gaussian,
    expansion_coefficients_generic,
    gaussian_density_evaluator,
    invert_rule_of_thumb_1,
    put_value_from_frame,
    reciprocity_I,
    rule_of_thumb_1,
    rule_of_thumb_1_report,
    rule_of_thumb_2,
)
from .chaos import (
    ChaosExtension,
    HermiteBasis,
    L2ErrorReport,
    analytic_l2_distance,
    chaos_level,
    hermite_eval,
    lognormal_value,
    martingale_check,
    mc_l2_distance,
    sharp_constant,
    truncated_value,
)
from .smile import (
    IngestReport,
    QuoteRecord,
    SmileRecord,
    build_smile,
    emit_smile,
    generate_quotes,
    ingest_quotes,
    parse_smile,
    quotes_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "SQRT_TWO_PI",
    "BachelierParams",
    "BlackScholesParams",
    "MoneynessFrame",
    "NoSolutionError",
    "OptionSpec",
    "ValidationError",
    "bachelier_terminal_density",
    "std_normal_cdf",
    "std_normal_pdf",
    "PriceResult",
    "atm_binary_and_dirac",
    "atm_gap_bound",
    "bachelier_call",
    "bachelier_call_value",
    "bachelier_put",
    "bachelier_put_value",
    "bs_call",
    "bs_call_value",
    "bs_put",
    "bs_put_value",
    "price",
    "ImpliedVolResult",
    "atm_implied_bachelier",
    "implied_bachelier",
    "implied_bs",
    "implied_vol_gap_bound",
    "DensityEvaluator",
    "ExpansionCoefficients",
    "ThumbReport",
    "bs_displacement_density",
    "call_value_from_frame",
    "dimensionless_F",
    "eval_series",
    "expansion_coefficients_gaussian",
    "expansion_coefficients_generic",
    "gaussian_density_evaluator",
    "invert_rule_of_thumb_1",
    "put_value_from_frame",
    "reciprocity_I",
    "rule_of_thumb_1",
    "rule_of_thumb_1_report",
    "rule_of_thumb_2",
    "ChaosExtension",
    "HermiteBasis",
    "L2ErrorReport",
    "analytic_l2_distance",
    "chaos_level",
    "hermite_eval",
    "lognormal_value",
    "martingale_check",
    "mc_l2_distance",
    "sharp_constant",
    "truncated_value",
    "IngestReport",
    "QuoteRecord",
    "SmileRecord",
    "build_smile",
    "emit_smile",
    "generate_quotes",
    "ingest_quotes",
    "parse_smile",
    "quotes_to_csv",
    "__version__",
]
