"""Discrete Sobolev perturbations of the classical orthogonal polynomial
eigenvalue problems: sequences, kernels, and certified growth laws."""

__version__ = "0.1.0"

from .families import (  # noqa: F401
    FamilySpec,
    LambdaCoefficients,
    RecurrenceRow,
    closed_form_endpoint,
    gegenbauer,
    hermite,
    jacobi,
    laguerre,
    lambda_classical,
    lambda_coefficients,
    mu_zero,
    recurrence_row,
    validate,
)
from .derivatives import (  # noqa: F401
    DerivativeTable,
    KernelSeries,
    build_derivative_table,
    kernel_diag_series,
    kernel_series,
    stream_deriv_kernel,
)
from .sobolev_eigen import (  # noqa: F401
    EigenSequence,
    SobolevSpec,
    alpha_nonsymmetric,
    alpha_symmetric,
    lambda_tilde,
    modified_branch,
    untouched_branch,
)
from .asymptotics import (  # noqa: F401
    AsymptoticLaw,
    VerificationVerdict,
    alpha_growth_law,
    derivative_growth_law,
    eigen_law,
    extrapolate_limit,
    kernel_growth_law,
    ratio_series,
    verify_law,
)
from .oracle import (  # noqa: F401
    ExactAlphaCase,
    QuadratureRule,
    exact_alpha,
    gauss_rule,
    orthonormality_residual,
    shift_identity_residual,
    sign_pattern_check,
)
