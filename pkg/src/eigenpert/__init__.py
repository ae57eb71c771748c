"""Analytic perturbation expansions of eigenvalues and eigenvectors.

Given a matrix family A0 + eps*A1 with diagonalizable (possibly
non-Hermitian, possibly degenerate) A0, this package computes the power
series of eigenvalues and eigenvectors to arbitrary order through a spectral
Sylvester-operator engine, and validates the result against brute-force
eigendecompositions on an eps grid.
"""

from .exceptions import (
    DegenerateBaseError,
    MatchingError,
    NormalizationBreakdownError,
    NotSemiSimpleError,
    SingularOperatorError,
    UnresolvedDegeneracyError,
)
from .perturbation import (
    ExpansionTerms,
    PerturbationProblem,
    evaluate,
    expand,
    first_order_eigenvalues,
    first_order_eigenvectors,
    resolve_degeneracy,
)
from .spectral import (
    EigenSystem,
    apply_analytic_function,
    cluster_eigenvalues,
    default_cluster_tol,
    diag_of,
    eigen_decompose,
    expand_in_reciprocal_basis,
    hadamard,
    hadamard_pseudo_inverse,
    spectral_projectors,
)
from .sylvester import SolveReport, SylvesterOperator, build_operator
from .validation import (
    EigencurveSample,
    ValidationReport,
    default_eps_grid,
    default_fd_grid,
    exact_eigencurve,
    finite_difference_coefficients,
    taylor_remainder_slopes,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateBaseError",
    "EigenSystem",
    "EigencurveSample",
    "ExpansionTerms",
    "MatchingError",
    "NormalizationBreakdownError",
    "NotSemiSimpleError",
    "PerturbationProblem",
    "SingularOperatorError",
    "SolveReport",
    "SylvesterOperator",
    "UnresolvedDegeneracyError",
    "ValidationReport",
    "apply_analytic_function",
    "build_operator",
    "cluster_eigenvalues",
    "default_cluster_tol",
    "default_eps_grid",
    "default_fd_grid",
    "diag_of",
    "eigen_decompose",
    "evaluate",
    "exact_eigencurve",
    "expand",
    "expand_in_reciprocal_basis",
    "finite_difference_coefficients",
    "first_order_eigenvalues",
    "first_order_eigenvectors",
    "hadamard",
    "hadamard_pseudo_inverse",
    "resolve_degeneracy",
    "spectral_projectors",
    "taylor_remainder_slopes",
]
