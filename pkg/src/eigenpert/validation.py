"""Brute-force validation of expansions against exact eigendecompositions.

Nothing here reuses the expansion recursion: eigencurves come straight from
dense eigensolves of A0 + eps*A1 on an eps grid, matched back to the base
ordering and rescaled to the same normalization.  Remainders of a K-th order
expansion must then shrink like eps^(K+1), which is checked as a log-log
regression slope, and the expansion coefficients themselves can be recovered
independently by polynomial fits to the sampled curves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .exceptions import MatchingError, NormalizationBreakdownError
from .perturbation import evaluate
from .spectral import diag_of

__all__ = [
    "EigencurveSample",
    "ValidationReport",
    "default_eps_grid",
    "default_fd_grid",
    "exact_eigencurve",
    "taylor_remainder_slopes",
    "finite_difference_coefficients",
]

# Largest error (relative to the base scale) still counted as "expansion is
# exact".  Matched eigenvectors of a split cluster carry solver noise of
# order eps_machine / gap(eps), about 1e-13 at the default grid, so the
# floor must sit above that.
EXACT_FLOOR = 1e-12


@dataclass(frozen=True)
class EigencurveSample:
    """Exact eigendata of A0 + eps*A1, aligned with the base eigensystem.

    Eigenvalues are matched one-to-one to the base ordering; eigenvector
    columns are rescaled so that w0_i* v_i(eps) = 1.
    """

    eps: float
    eigenvalues: np.ndarray
    V: np.ndarray


@dataclass(frozen=True)
class ValidationReport:
    """Remainder errors over an eps grid and their fitted log-log slopes.

    A slope is NaN when the corresponding errors sit at the floating-point
    floor (the expansion is exact there); such curves pass by definition.
    """

    order: int
    eps_grid: np.ndarray
    lambda_errors: np.ndarray
    vector_errors: np.ndarray
    fitted_slope_lambda: float
    fitted_slope_V: float
    lambda_exact: bool
    vector_exact: bool
    passed: bool


def default_eps_grid(eps_min=1e-3, eps_max=1e-1, points=8):
    """Log-spaced eps grid; the default spans the noise-free asymptotic regime."""
    if not (0 < eps_min < eps_max):
        raise ValueError("need 0 < eps_min < eps_max")
    if points < 4:
        raise ValueError("need at least 4 grid points")
    return np.geomspace(eps_min, eps_max, points)


def exact_eigencurve(problem, base, eps, matching_tol=None, normalization_tol=1e-8):
    """Eigendecomposition of A0 + eps*A1 matched and normalized to ``base``.

    Matching assigns computed eigenvalues to base indices greedily by
    distance to the first-order prediction lambda0_i + eps * lambda1_i; the
    first-order term is what separates the members of a degenerate cluster,
    so ``base`` must be the (rotated) base of the expansion.

    Raises
    ------
    MatchingError
        If two candidate eigenvalues are indistinguishably close to the same
        prediction (or two predictions to the same candidate), i.e. the
        assignment is not trustworthy at this eps.
    NormalizationBreakdownError
        If some w0_i* v_i(eps) is numerically zero, so the normalization
        w0_i* v_i(eps) = 1 cannot be imposed.
    """
    if eps == 0:
        return EigencurveSample(0.0, base.eigenvalues.copy(), base.V.copy())

    lam1 = diag_of(base.W_star @ problem.A1 @ base.V)
    predicted = base.eigenvalues + eps * lam1
    if matching_tol is None:
        matching_tol = 1e-8 * max(1.0, float(np.max(np.abs(predicted))))

    values, vectors = np.linalg.eig(problem.A0 + eps * problem.A1)
    dist = np.abs(predicted[:, None] - values[None, :])

    n = base.n
    for axis in (0, 1):
        if n < 2:
            break
        two = np.sort(dist, axis=1 - axis)[:, :2] if axis == 0 else np.sort(dist, axis=0)[:2, :].T
        if np.any(two[:, 1] - two[:, 0] <= matching_tol):
            raise MatchingError(
                f"eigenvalue matching ambiguous at eps={eps:g}; shrink eps"
            )

    order = np.argsort(dist, axis=None, kind="stable")
    perm = np.full(n, -1)
    used = np.zeros(n, dtype=bool)
    assigned = 0
    for flat in order:
        i, j = divmod(int(flat), n)
        if perm[i] < 0 and not used[j]:
            perm[i] = j
            used[j] = True
            assigned += 1
            if assigned == n:
                break

    values = values[perm]
    vectors = vectors[:, perm]
    scales = np.einsum("ij,ij->j", base.W.conj(), vectors)
    floor = normalization_tol * np.linalg.norm(base.W, axis=0) * np.linalg.norm(vectors, axis=0)
    if np.any(np.abs(scales) <= floor):
        raise NormalizationBreakdownError(
            f"perturbed eigenvector nearly orthogonal to its left basis vector "
            f"at eps={eps:g}; shrink eps"
        )
    return EigencurveSample(float(eps), values, vectors / scales[None, :])


def taylor_remainder_slopes(problem, terms, eps_grid=None):
    """Fit the decay rate of expansion remainders over an eps grid.

    For each eps the exact eigendata is compared with the truncated series;
    a K-th order expansion passes when both fitted log-log slopes reach
    K + 0.9, or when the errors are at the floating-point floor (flagged
    exact, slope NaN).
    """
    if eps_grid is None:
        eps_grid = default_eps_grid()
    eps_grid = np.sort(np.asarray(eps_grid, dtype=float))
    if eps_grid.size < 4 or eps_grid[0] <= 0:
        raise ValueError("eps_grid must contain at least 4 positive points")

    lam_err = np.empty(eps_grid.size)
    vec_err = np.empty(eps_grid.size)
    for s, eps in enumerate(eps_grid):
        sample = exact_eigencurve(problem, terms.base, eps)
        lam_fit, V_fit = evaluate(terms, eps)
        lam_err[s] = np.max(np.abs(sample.eigenvalues - lam_fit))
        vec_err[s] = np.linalg.norm(sample.V - V_fit)

    K = terms.order
    lam_scale = max(1.0, float(np.max(np.abs(terms.base.eigenvalues))))
    vec_scale = max(1.0, float(np.linalg.norm(terms.base.V)))

    def fit(err, scale):
        if np.max(err) <= EXACT_FLOOR * scale:
            return float("nan"), True
        floored = np.maximum(err, 1e-17 * scale)
        slope = float(np.polyfit(np.log(eps_grid), np.log(floored), 1)[0])
        return slope, False

    slope_lam, lam_exact = fit(lam_err, lam_scale)
    slope_vec, vec_exact = fit(vec_err, vec_scale)
    passed = (lam_exact or slope_lam >= K + 0.9) and (vec_exact or slope_vec >= K + 0.9)
    return ValidationReport(
        K, eps_grid, lam_err, vec_err, slope_lam, slope_vec, lam_exact, vec_exact, passed
    )


def default_fd_grid(points=12):
    """Default eps grid for coefficient recovery (orders 1 and 2)."""
    return np.geomspace(2e-4, 2e-3, points)


def finite_difference_coefficients(problem, base, k, eps_grid):
    """Recover order-k expansion coefficients from sampled eigencurves.

    Fits polynomials in eps to each matched eigenvalue curve and to each
    entry of the normalized eigenvector curves (the exact values at eps = 0
    anchor the fit), then reads off the eps^k coefficients.  The fit degree
    is k + 2: the terms through eps^k are the payload and two more orders
    guard against truncation bias, which otherwise floors the recovery near
    1e-5 relative (the first unmodeled term biases the eps^k coefficient by
    O(eps_max^(deg+1-k))).  Entirely independent of the expansion recursion.

    Returns
    -------
    (ndarray, ndarray)
        The order-k eigenvalue corrections (length n) and eigenvector
        correction matrix (n x n).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    eps_grid = np.sort(np.asarray(eps_grid, dtype=float))
    if eps_grid.size < k + 2:
        raise ValueError(f"need at least {k + 2} grid points for order {k}")
    if eps_grid[0] <= 0:
        raise ValueError("eps grid must be positive")
    degree = k + 2  # grid + anchor always hold at least degree + 1 samples

    xs = np.concatenate([[0.0], eps_grid])
    van = npoly.polyvander(xs, degree)
    scaled = van / np.linalg.norm(van, axis=0)
    if np.linalg.cond(scaled) > 1e10:
        raise ValueError("eps grid unsuitable: polynomial fit is ill-conditioned")

    n = base.n
    lam_samples = np.empty((xs.size, n), dtype=np.complex128)
    vec_samples = np.empty((xs.size, n * n), dtype=np.complex128)
    for s, eps in enumerate(xs):
        sample = exact_eigencurve(problem, base, eps)
        lam_samples[s] = sample.eigenvalues
        vec_samples[s] = sample.V.reshape(-1)

    lam_coeffs = npoly.polyfit(xs, lam_samples, degree)
    vec_coeffs = npoly.polyfit(xs, vec_samples, degree)
    return lam_coeffs[k], vec_coeffs[k].reshape(n, n)
