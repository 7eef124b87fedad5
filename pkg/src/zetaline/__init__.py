"""Explicit exponential-sum derivative tests and certified bounds for |zeta(1+it)|."""

from .breakdown import BoundBreakdown
from .exp_sums import (
    Beta4Mode,
    EtaVector,
    SecondDerivVariant,
    fifth_derivative_bound,
    fourth_derivative_bound,
    kuzmin_landau_bound,
    second_derivative_bound,
    third_derivative_bound,
    weighted_power_sum_bound,
)
from .gamma_chi import chi_one_line_bound, g_function, gamma_magnitude_envelope, shifted_gamma_envelope
from .phase_models import DerivEnvelope, EnvelopeError, PhaseFunction, derivative_envelope
from .pipeline import (
    REFERENCE_PARAMS,
    OneLineBound,
    PipelineParams,
    Which,
    dyadic_blocks,
    pipeline_breakdown,
    pipeline_constant,
    stitch_constant,
    zeta_one_line_bound,
)
from .rs_one_line import one_line_decomposition, triangle_one_line_bound

__version__ = "0.1.0"

__all__ = [
    "BoundBreakdown",
    "Beta4Mode",
    "EtaVector",
    "SecondDerivVariant",
    "kuzmin_landau_bound",
    "second_derivative_bound",
    "third_derivative_bound",
    "fourth_derivative_bound",
    "fifth_derivative_bound",
    "weighted_power_sum_bound",
    "gamma_magnitude_envelope",
    "shifted_gamma_envelope",
    "g_function",
    "chi_one_line_bound",
    "PhaseFunction",
    "DerivEnvelope",
    "EnvelopeError",
    "derivative_envelope",
    "PipelineParams",
    "REFERENCE_PARAMS",
    "OneLineBound",
    "Which",
    "dyadic_blocks",
    "pipeline_breakdown",
    "pipeline_constant",
    "stitch_constant",
    "zeta_one_line_bound",
    "one_line_decomposition",
    "triangle_one_line_bound",
]
