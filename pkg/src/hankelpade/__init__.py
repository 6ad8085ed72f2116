"""High-precision Thomas-Fermi solver via Hankel determinants and Pade resummation.

The package determines the one free Taylor coefficient of the transformed
Thomas-Fermi solution -- equivalently the slope at origin u'(0) -- by
requiring Hankel determinants of the series coefficients to vanish, tracks
the resulting root sequence to large matrix dimension, and reconstructs the
solution u(x) and its derivative from Pade approximants built at the
converged slope.
"""

from .algebra import (
    BigFloat,
    PolyRoot,
    Rational,
    SlopePolynomial,
    bigfloat_str,
    poly_arith,
    poly_eval,
    poly_real_roots,
    to_bigfloat,
)
from .errors import (
    DimensionTooLargeError,
    HankelPadeError,
    InsufficientDataError,
    InsufficientSeriesError,
    InvalidOrderError,
    NoSignChangeError,
    PoleEncounteredError,
    PrecisionExhaustedError,
    SingularSystemError,
    ZeroPolynomialError,
)
from .hankel import (
    ConvergenceFit,
    HankelSpec,
    RootRecord,
    RootSequence,
    convergence_fit,
    det_exact,
    det_exact_minors,
    det_numeric,
    root_for,
    root_sequence,
)
from .pade import PadeApproximant, TFEvaluation, pade_construct, pade_eval, tf_eval, tf_table
from .series import NumericSeries, SymbolicSeries, numeric_coeffs, residual_check, symbolic_coeffs

__version__ = "0.1.0"

__all__ = [
    "BigFloat",
    "ConvergenceFit",
    "DimensionTooLargeError",
    "HankelPadeError",
    "HankelSpec",
    "InsufficientDataError",
    "InsufficientSeriesError",
    "InvalidOrderError",
    "NoSignChangeError",
    "NumericSeries",
    "PadeApproximant",
    "PoleEncounteredError",
    "PolyRoot",
    "PrecisionExhaustedError",
    "Rational",
    "RootRecord",
    "RootSequence",
    "SingularSystemError",
    "SlopePolynomial",
    "SymbolicSeries",
    "TFEvaluation",
    "ZeroPolynomialError",
    "bigfloat_str",
    "convergence_fit",
    "det_exact",
    "det_exact_minors",
    "det_numeric",
    "numeric_coeffs",
    "pade_construct",
    "pade_eval",
    "poly_arith",
    "poly_eval",
    "poly_real_roots",
    "residual_check",
    "root_for",
    "root_sequence",
    "symbolic_coeffs",
    "tf_eval",
    "tf_table",
]
