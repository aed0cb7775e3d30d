"""Arithmetic by binary expansion: doubling/halving and squaring/square-rooting.

Integer multiplication and division run on the binary digits of one operand;
their multiplicative analogues give fractional powers and logarithms with the
square root as the only primitive beyond multiplication.  Every algorithm
maintains an explicit loop invariant, optionally records a step trace, and is
paired with an exact-rational oracle in :mod:`duplation.reference`.
"""

from .errors import ConvergenceError, DomainError, OverflowRangeError, TraceSchemaError
from .intops import U64_MAX, BinaryExpansion, QuotRem, binary_digits, div_qr, egyptian_mul
from .realops import (
    DEFAULT_TOLERANCES,
    SQRT_CORRECTLY_ROUNDED,
    SQRT_HERON,
    BinaryFraction,
    BriggsChain,
    RationalExponent,
    ToleranceConfig,
    briggs_chain,
    heron_sqrt,
    log_base,
    pow_rational,
    pow_real,
)
from .trace import (
    TraceEvent,
    TraceLog,
    render_briggs,
    render_division,
    render_heron,
    render_log_digits,
    render_power,
    render_rhind,
    to_json,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "U64_MAX",
    "BinaryExpansion",
    "QuotRem",
    "binary_digits",
    "egyptian_mul",
    "div_qr",
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "RationalExponent",
    "BinaryFraction",
    "BriggsChain",
    "SQRT_CORRECTLY_ROUNDED",
    "SQRT_HERON",
    "heron_sqrt",
    "pow_rational",
    "pow_real",
    "log_base",
    "briggs_chain",
    "TraceEvent",
    "TraceLog",
    "render_rhind",
    "render_division",
    "render_heron",
    "render_log_digits",
    "render_briggs",
    "render_power",
    "to_json",
    "DomainError",
    "OverflowRangeError",
    "ConvergenceError",
    "TraceSchemaError",
]
