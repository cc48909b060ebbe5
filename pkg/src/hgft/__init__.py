"""Harmonic error-function family: series, operators, criteria, verification."""

from .errors import (
    DecompositionInfeasible,
    HGFTError,
    InvariantError,
    ParameterRangeError,
    PoleProximityError,
)
from .membership import (
    DecompositionWeights,
    MembershipReport,
    coefficient_sum,
    convex_combine,
    covering_radius,
    decompose,
    distortion_lower,
    distortion_upper,
    extreme_g,
    extreme_h,
    has_sign_pattern,
    is_subclass_member,
    reconstruct,
    weight_a,
    weight_b,
)
from .operators import (
    FamilyParams,
    apply_c_operator,
    apply_error_convolution,
    bernardi,
    bernardi_quadrature_oracle,
    c_multiplier,
    error_coefficient,
    transformed_series,
)
from .series import (
    AnalyticSeries,
    HarmonicFunction,
    convolve,
    derivative,
    eval_analytic,
    eval_derivative,
    eval_harmonic,
    jacobian,
)
from .verification import (
    GridSpec,
    VerificationReport,
    radial_necessity_probe,
    random_member,
    random_sign_pattern,
    random_subclass_member,
    starlike_functional,
    verify_analytic_condition,
    verify_distortion,
    verify_injectivity,
    verify_laplace,
    verify_sense_preserving,
)

__version__ = "0.1.0"
