"""Risk measures on equally weighted samples and submodularity checks.

Measures take a list of losses (positive numbers are losses). Measure specs
use the same text form as the command line tool, e.g. ``es:0.95``,
``shortfall:exp:1`` or ``mmd:square:es:0.5``.
"""

from ._core import (
    DimensionError,
    DomainError,
    NumericError,
    ParseError,
    aes,
    aes_counterexample,
    certainty_equivalent,
    check_loss,
    distortion,
    es,
    evaluate,
    expected_loss,
    mmd,
    mmd_counterexample,
    oce,
    pipeline,
    selftest,
    shortfall,
    shortfall_jump_deficit,
    subadditivity_gap,
    submodularity_gap,
    sweep,
    var,
    write_synthetic_prices,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "NumericError",
    "ParseError",
    "aes",
    "aes_counterexample",
    "certainty_equivalent",
    "check_loss",
    "distortion",
    "es",
    "evaluate",
    "expected_loss",
    "mmd",
    "mmd_counterexample",
    "oce",
    "pipeline",
    "selftest",
    "shortfall",
    "shortfall_jump_deficit",
    "subadditivity_gap",
    "submodularity_gap",
    "sweep",
    "var",
    "write_synthetic_prices",
]
