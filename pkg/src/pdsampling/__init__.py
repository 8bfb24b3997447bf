"""Sampling with positive-definite kernels: Gram algebra, frames, probes.

The package turns a handful of classical kernels (sinc, Brownian, bridge,
binomial, tabulated) into concrete numerics: exact Gram matrices with
closed-form determinant oracles, truncated frame bounds and reconstruction,
spline and ridge interpolation with an obstruction probe, nested-projection
mass probes deciding whether point evaluations carry finite norm, and
seeded Karhunen-Loeve path simulation.
"""

from .errors import (
    CapacityError,
    DomainError,
    NumericalError,
    SingularMatrixError,
    ValidationError,
)
from .frames import (
    CoefficientFunction,
    FrameReport,
    analysis,
    dual_frame_coefficients,
    frame_bounds_truncated,
    parseval_defect,
    reconstruct,
    synthesis,
)
from .gram import (
    GramMatrix,
    PascalMatrix,
    binomial_gram_inverse,
    binomial_gram_inverse_exact,
    build_gram,
    cholesky_factor,
    cholesky_solve,
    det_bridge_closed,
    det_brownian_closed,
    det_lu,
    gram_report,
    pascal_inverse,
    pascal_lower,
    solve_spd,
)
from .interpolate import (
    ObstructionProbeResult,
    PiecewiseLinearFunction,
    SplineInterpolant,
    cm_norm_sq,
    obstruction_probe,
    ridge_interpolant,
    sawtooth_energy_closed,
    sawtooth_witness,
    spline_interpolant,
    tent_basis,
)
from .kernels import (
    KernelSpec,
    SampleSet,
    TabulatedTable,
    binom,
    check_domain,
    check_positive_definite,
    eval_kernel,
    parse_kernel,
    sinc_pi,
    validate_sample_set,
)
from .massprobe import (
    MassProbeReport,
    Verdict,
    binomial_projection_norm_closed,
    bridge_delta_norm_closed,
    brownian_delta_norm_closed,
    mass_verdict,
    membership_probe,
    probe_report,
    projection_norm_sequence,
)
from .simulate import (
    PathEnsemble,
    empirical_covariance,
    haar_antiderivative_matrix,
    simulate_bridge,
    simulate_brownian,
    truncated_covariance,
    truncated_variance,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CoefficientFunction",
    "DomainError",
    "FrameReport",
    "GramMatrix",
    "KernelSpec",
    "MassProbeReport",
    "NumericalError",
    "ObstructionProbeResult",
    "PascalMatrix",
    "PathEnsemble",
    "PiecewiseLinearFunction",
    "SampleSet",
    "SingularMatrixError",
    "SplineInterpolant",
    "TabulatedTable",
    "ValidationError",
    "Verdict",
    "analysis",
    "binom",
    "binomial_gram_inverse",
    "binomial_gram_inverse_exact",
    "binomial_projection_norm_closed",
    "bridge_delta_norm_closed",
    "brownian_delta_norm_closed",
    "build_gram",
    "check_domain",
    "check_positive_definite",
    "cholesky_factor",
    "cholesky_solve",
    "cm_norm_sq",
    "det_bridge_closed",
    "det_brownian_closed",
    "det_lu",
    "dual_frame_coefficients",
    "empirical_covariance",
    "eval_kernel",
    "frame_bounds_truncated",
    "gram_report",
    "haar_antiderivative_matrix",
    "mass_verdict",
    "membership_probe",
    "obstruction_probe",
    "parse_kernel",
    "parseval_defect",
    "pascal_inverse",
    "pascal_lower",
    "probe_report",
    "projection_norm_sequence",
    "reconstruct",
    "ridge_interpolant",
    "sawtooth_energy_closed",
    "sawtooth_witness",
    "simulate_bridge",
    "simulate_brownian",
    "sinc_pi",
    "solve_spd",
    "spline_interpolant",
    "synthesis",
    "tent_basis",
    "truncated_covariance",
    "truncated_variance",
    "validate_sample_set",
]
