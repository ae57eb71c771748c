"""Dense complex eigendecomposition with a reciprocal left basis, plus the
Diag/Hadamard calculus and spectral projectors everything else is built on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NotSemiSimpleError

__all__ = [
    "EigenSystem",
    "DEFECT_THRESHOLD",
    "default_cluster_tol",
    "diag_of",
    "hadamard",
    "hadamard_pseudo_inverse",
    "cluster_eigenvalues",
    "eigen_decompose",
    "spectral_projectors",
    "apply_analytic_function",
    "expand_in_reciprocal_basis",
]

# cond(V) beyond which W = V^{-*} carries no significant digits at all
DEFECT_THRESHOLD = 1.0 / np.sqrt(np.finfo(float).eps)

_CLUSTER_TOL_SCALE = 1e-8


def _as_matrix(M, name="matrix"):
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {M.shape}")
    M = M.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def _as_square(M, name="matrix"):
    M = _as_matrix(M, name)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    return M


def _normalize_columns(V):
    """Scale each column to unit length with its largest entry real positive.

    Ties in magnitude resolve to the lowest row index, so the scaling is a
    deterministic function of the input.
    """
    V = V / np.linalg.norm(V, axis=0)
    anchor_rows = np.argmax(np.abs(V), axis=0)
    anchors = V[anchor_rows, np.arange(V.shape[1])]
    return V / (anchors / np.abs(anchors))


def default_cluster_tol(values):
    """Relative tolerance under which two eigenvalues count as equal."""
    values = np.asarray(values)
    scale = np.max(np.abs(values)) if values.size else 0.0
    return _CLUSTER_TOL_SCALE * max(1.0, scale)


@dataclass(frozen=True)
class EigenSystem:
    """Eigendecomposition ``A V = V diag(eigenvalues)`` with reciprocal left basis.

    ``W`` holds the left basis as columns, normalized so that
    ``W.conj().T @ V == I``; row ``i`` of ``W.conj().T`` is the left
    eigenvector paired with column ``i`` of ``V``.  ``clusters`` partitions
    the indices into groups of numerically equal eigenvalues and ``cond_V``
    is the 2-norm condition number of ``V``, the accuracy currency for every
    formula downstream.
    """

    eigenvalues: np.ndarray
    V: np.ndarray
    W: np.ndarray
    clusters: tuple[tuple[int, ...], ...]
    cond_V: float

    def __post_init__(self):
        for arr in (self.eigenvalues, self.V, self.W):
            arr.flags.writeable = False

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def W_star(self) -> np.ndarray:
        """The inverse of V; its rows are the left eigenvectors."""
        return self.W.conj().T

    @property
    def has_degenerate_clusters(self) -> bool:
        return any(len(c) > 1 for c in self.clusters)


def diag_of(M):
    """Diagonal of a square matrix, as a 1-D vector.

    The vector stands for the diagonal matrix Diag(M), so
    ``diag_of(M @ np.diag(d)) == diag_of(M) * d`` and
    ``diag_of(M + N) == diag_of(M) + diag_of(N)``.
    """
    M = _as_square(M)
    return np.diagonal(M).copy()


def hadamard(M, N):
    """Entrywise product of two equally shaped matrices."""
    M = _as_matrix(M, "M")
    N = _as_matrix(N, "N")
    if M.shape != N.shape:
        raise ValueError(f"shape mismatch: {M.shape} vs {N.shape}")
    return M * N


def hadamard_pseudo_inverse(M, zero_tol=0.0):
    """Entrywise reciprocal with entries of magnitude <= zero_tol mapped to 0.

    Total on all inputs; the zero entries of the result mark exactly the
    (near-)zero entries of ``M``.
    """
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    M = _as_matrix(M)
    out = np.zeros_like(M)
    mask = np.abs(M) > zero_tol
    out[mask] = 1.0 / M[mask]
    return out


def cluster_eigenvalues(values, cluster_tol):
    """Partition indices of ``values`` by transitive closure of |vi - vj| <= tol.

    Blocks are ordered by their smallest member and each block keeps the
    global index order, so the partition is deterministic.
    """
    if cluster_tol < 0:
        raise ValueError("cluster_tol must be nonnegative")
    values = np.asarray(values, dtype=np.complex128)
    n = values.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= cluster_tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return tuple(tuple(blocks[r]) for r in sorted(blocks))


def eigen_decompose(A, cluster_tol=None):
    """Eigendecomposition of a square matrix with a reciprocal left basis.

    Parameters
    ----------
    A : (n, n) array_like
        Square matrix, assumed diagonalizable.
    cluster_tol : float, optional
        Distance under which eigenvalues are grouped into one cluster.
        Defaults to ``1e-8 * max(1, max |eigenvalue|)``.

    Returns
    -------
    EigenSystem
        Eigenvalues sorted ascending by (real, imaginary); right
        eigenvector columns scaled to unit norm with the largest entry real
        positive; ``W`` computed as the inverse-adjoint of ``V`` so the
        reciprocal property holds to solver precision.

    Raises
    ------
    NotSemiSimpleError
        If ``cond(V)`` exceeds the defect threshold, i.e. the matrix is
        defective or indistinguishably close to it.
    ValueError
        If ``A`` is not square or contains non-finite entries.
    """
    A = _as_square(A, "A")
    n = A.shape[0]
    values, V = np.linalg.eig(A)
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    V = _normalize_columns(V[:, order])

    cond_V = float(np.linalg.cond(V))
    if not np.isfinite(cond_V) or cond_V > DEFECT_THRESHOLD:
        raise NotSemiSimpleError(
            f"matrix is not semi-simple: eigenvector condition {cond_V:.3e} "
            f"exceeds the defect threshold {DEFECT_THRESHOLD:.3e}"
        )
    W_star = np.linalg.solve(V, np.eye(n, dtype=np.complex128))

    if cluster_tol is None:
        cluster_tol = default_cluster_tol(values)
    clusters = cluster_eigenvalues(values, cluster_tol)
    return EigenSystem(values, V, W_star.conj().T, clusters, cond_V)


def spectral_projectors(es):
    """Oblique projectors P_i = v_i w_i* onto the individual eigensubspaces.

    They resolve the identity (sum P_i = I), are mutually annihilating, and
    reconstruct the matrix as sum lambda_i P_i.
    """
    return [np.outer(es.V[:, i], es.W[:, i].conj()) for i in range(es.n)]


def apply_analytic_function(es, f):
    """Evaluate f on the matrix through its eigendecomposition.

    ``f`` is applied to each eigenvalue and the result assembled as
    ``V diag(f(lambda)) W*``; ``f`` must be defined (and finite) at every
    eigenvalue.
    """
    fvals = np.empty(es.n, dtype=np.complex128)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for i, lam in enumerate(es.eigenvalues):
            try:
                fvals[i] = f(lam)
            except (ArithmeticError, ValueError) as exc:
                raise ValueError(f"function undefined at eigenvalue {lam}") from exc
    if not np.all(np.isfinite(fvals.real)) or not np.all(np.isfinite(fvals.imag)):
        raise ValueError("function returned a non-finite value at an eigenvalue")
    return (es.V * fvals) @ es.W_star


def expand_in_reciprocal_basis(x, es):
    """Coefficients of x in the right-eigenvector basis: c_i = <w_i, x>."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (es.n,):
        raise ValueError(f"vector length {x.shape} does not match system size {es.n}")
    return es.W_star @ x
