"""Little q-Legendre approximants to q-harmonic, q-logarithm and Lambert series."""

from .approximants import (
    ApproximantRecord,
    Kind,
    PoleError,
    ZeroFactorError,
    approximant_harmonic,
    approximant_lambert,
    approximant_log2,
    convergence_table,
    eval_constant,
    residual_via_remainder,
    stieltjes_f,
)
from .bigfloat import BigFloat
from .cyclotomic import cyclotomic_poly, denominator_sequence, growth_report
from .qlegendre import assoc_scaled, eval_scaled, legendre_rep

__version__ = "0.1.0"
