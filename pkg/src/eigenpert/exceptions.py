"""Exception types shared across the package."""

import numpy as np


class NotSemiSimpleError(np.linalg.LinAlgError):
    """The matrix does not have a full basis of eigenvectors.

    Raised when the eigenvector matrix is numerically singular (condition
    number beyond the defect threshold), which makes the reciprocal left
    basis, and everything built on it, meaningless.
    """


class UnresolvedDegeneracyError(np.linalg.LinAlgError):
    """A repeated eigenvalue is not split at first order.

    The cluster block of the perturbation has repeated eigenvalues itself,
    so the basis that makes the expansion valid is not determined by the
    first-order data.
    """


class SingularOperatorError(np.linalg.LinAlgError):
    """The Sylvester operator has zero eigenvalues; a plain inverse does not exist."""


class DegenerateBaseError(ValueError):
    """An operation requiring distinct eigenvalues was called on a clustered base."""


class MatchingError(RuntimeError):
    """Eigenvalue-to-base matching is ambiguous at the requested step size."""


class NormalizationBreakdownError(RuntimeError):
    """A perturbed eigenvector became orthogonal to its reference left vector."""
