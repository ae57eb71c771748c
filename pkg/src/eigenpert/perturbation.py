"""Power-series expansion of eigenvalues and eigenvectors of A0 + eps*A1.

Order by order, the eigenvector corrections solve Sylvester equations whose
operator is X -> A0 X - X Lambda0.  In the eigenbasis of A0 that operator is
a Hadamard multiplication by the table of eigenvalue differences, so each
order costs one matrix product and one entrywise product.  Repeated
eigenvalues are handled by first rotating the degenerate eigenbasis so the
perturbation is diagonal on each cluster, which is the unique basis in which
the series exists.

Normalization convention: the base satisfies W0* V0 = I and every correction
satisfies diag(W0* Vk) = 0, i.e. each perturbed eigenvector keeps unit
component along its own unperturbed direction.  This fixes all terms
uniquely; eigenvector curves under the more common unit-norm convention
differ by a scalar ("gauge") factor per column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateBaseError,
    NotSemiSimpleError,
    UnresolvedDegeneracyError,
)
from .spectral import (
    DEFECT_THRESHOLD,
    EigenSystem,
    _as_square,
    _normalize_columns,
    cluster_eigenvalues,
    default_cluster_tol,
    diag_of,
    eigen_decompose,
)

__all__ = [
    "PerturbationProblem",
    "ExpansionTerms",
    "first_order_eigenvalues",
    "first_order_eigenvectors",
    "resolve_degeneracy",
    "expand",
    "evaluate",
]


@dataclass(frozen=True)
class PerturbationProblem:
    """The family A0 + eps*A1 together with expansion order and clustering tolerance."""

    A0: np.ndarray
    A1: np.ndarray
    order: int = 1
    cluster_tol: float | None = None

    def __post_init__(self):
        A0 = _as_square(self.A0, "A0").copy()  # detach from caller before freezing
        A1 = _as_square(self.A1, "A1").copy()
        if A0.shape != A1.shape:
            raise ValueError(f"A0 and A1 must have equal shapes, got {A0.shape} vs {A1.shape}")
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        object.__setattr__(self, "A0", A0)
        object.__setattr__(self, "A1", A1)
        A0.flags.writeable = False
        A1.flags.writeable = False

    @property
    def n(self) -> int:
        return self.A0.shape[0]


@dataclass(frozen=True)
class ExpansionTerms:
    """Expansion data to order K.

    ``base`` is the eigensystem of A0, rotated inside degenerate clusters
    when needed; ``Lambda[k-1]`` and ``V[k-1]`` are the order-k corrections
    (eigenvalue corrections as 1-D vectors, so diagonality holds by
    construction).  ``W1`` carries the first-order left-eigenvector
    corrections as columns; ``rotated`` records, per cluster of the base,
    whether a basis rotation was applied.

    Index contract: entry i of every ``Lambda[k]`` and column i of every
    ``V[k]`` belong to eigenvalue i of ``base``.
    """

    base: EigenSystem
    Lambda: tuple[np.ndarray, ...]
    V: tuple[np.ndarray, ...]
    W1: np.ndarray
    rotated: tuple[bool, ...]

    def __post_init__(self):
        for arr in self.Lambda + self.V + (self.W1,):
            arr.flags.writeable = False

    @property
    def order(self) -> int:
        return len(self.Lambda)


def _difference_pinv(es):
    """Hadamard pseudo-inverse of the eigenvalue-difference table.

    Entry (i, j) is 1/(lambda_i - lambda_j) when i and j lie in different
    clusters and exactly 0 otherwise.  Zeroing by cluster membership rather
    than by thresholding keeps near-degenerate chains from producing huge
    spurious entries.
    """
    lam = es.eigenvalues
    diff = lam[:, None] - lam[None, :]
    same = np.zeros(diff.shape, dtype=bool)
    for cluster in es.clusters:
        ix = np.asarray(cluster)
        same[np.ix_(ix, ix)] = True
    out = np.zeros_like(diff)
    out[~same] = 1.0 / diff[~same]
    return out


def _coupling(es, A1):
    """The perturbation seen in the eigenbasis: W0* A1 V0."""
    if A1.shape != (es.n, es.n):
        raise ValueError(f"A1 must have shape {(es.n, es.n)}, got {A1.shape}")
    return es.W_star @ A1 @ es.V


def _require_cluster_diagonal(es, C):
    """Check that C is diagonal on every degenerate cluster block."""
    scale = max(1.0, float(np.max(np.abs(C))))
    for cluster in es.clusters:
        if len(cluster) == 1:
            continue
        ix = np.asarray(cluster)
        block = C[np.ix_(ix, ix)]
        off = block - np.diag(np.diagonal(block))
        if np.max(np.abs(off)) > 1e-8 * scale:
            raise DegenerateBaseError(
                "base has degenerate clusters and the perturbation is not "
                "diagonal on them; call resolve_degeneracy first"
            )


def first_order_eigenvalues(es0, A1):
    """First-order eigenvalue corrections diag(W0* A1 V0).

    Requires all eigenvalues distinct; for clustered spectra the corrections
    are only defined in the rotated basis from :func:`resolve_degeneracy`,
    which returns them directly.
    """
    if es0.has_degenerate_clusters:
        raise DegenerateBaseError(
            "degenerate eigenvalues; rotation required (use resolve_degeneracy)"
        )
    A1 = _as_square(A1, "A1")
    return diag_of(_coupling(es0, A1))


def first_order_eigenvectors(es0, A1):
    """First-order corrections (V1, W1) to the right and left eigenvectors.

    V1 solves A0 V1 - V1 Lambda0 = V0 Lambda1 - A1 V0 and W1* solves the
    adjoint-side equation; both are normalized by diag(W0* V1) = 0, which
    also enforces W0* V1 + W1* V0 = 0.

    The base must have distinct eigenvalues, or be the rotated basis of
    :func:`resolve_degeneracy` (the cluster blocks of W0* A1 V0 must be
    diagonal).
    """
    A1 = _as_square(A1, "A1")
    C = _coupling(es0, A1)
    _require_cluster_diagonal(es0, C)
    G = _difference_pinv(es0) * C
    V1 = -es0.V @ G
    W1 = (G @ es0.W_star).conj().T
    return V1, W1


def resolve_degeneracy(es0, A1):
    """Rotate degenerate clusters into the basis where the expansion exists.

    For each cluster of m > 1 equal eigenvalues, the m x m block of
    W0* A1 V0 is diagonalized; the cluster's right eigenvectors are combined
    by the block's eigenvector matrix (and the left rows by its inverse), so
    the perturbation becomes diagonal on the cluster.  Within a cluster the
    first-order corrections keep the order in which the block eigensolver
    reports them.

    Returns
    -------
    (EigenSystem, ndarray)
        The rotated eigensystem and the full vector of first-order
        eigenvalue corrections.

    Raises
    ------
    NotSemiSimpleError
        If a cluster block is itself defective, so no first-order splitting
        basis exists.
    UnresolvedDegeneracyError
        If a cluster block has repeated eigenvalues: the splitting is then
        decided only at higher order, which is out of scope here.
    """
    A1 = _as_square(A1, "A1")
    C = _coupling(es0, A1)
    if not es0.has_degenerate_clusters:
        return es0, diag_of(C)

    V = np.array(es0.V)
    W_star = np.array(es0.W_star)
    for cluster in es0.clusters:
        if len(cluster) == 1:
            continue
        ix = np.asarray(cluster)
        block = C[np.ix_(ix, ix)]
        block_values, S = np.linalg.eig(block)
        cond_S = np.linalg.cond(S)
        if not np.isfinite(cond_S) or cond_S > DEFECT_THRESHOLD:
            raise NotSemiSimpleError(
                "first-order splitting failed: cluster block is not semi-simple"
            )
        block_tol = default_cluster_tol(block_values)
        if any(len(c) > 1 for c in cluster_eigenvalues(block_values, block_tol)):
            raise UnresolvedDegeneracyError(
                "higher-order degeneracy unresolved: cluster block of the "
                "perturbation has repeated eigenvalues"
            )
        S = _normalize_columns(S)
        V[:, ix] = es0.V[:, ix] @ S
        W_star[ix, :] = np.linalg.solve(S, es0.W_star[ix, :])

    rotated = EigenSystem(
        es0.eigenvalues.copy(),
        V,
        W_star.conj().T,
        es0.clusters,
        float(np.linalg.cond(V)),
    )
    return rotated, diag_of(_coupling(rotated, A1))


def expand(problem):
    """Expansion terms {Lambda_k}, {V_k} (and W1) to the requested order.

    The recursion per order k is

        Lambda_k = diag(W0* A1 V_{k-1})
        V_k      = V0 (P o W0*(sum_{i=1}^{k-1} V_i Lambda_{k-i} - A1 V_{k-1}))

    with P the pseudo-inverted eigenvalue-difference table.  The V0 Lambda_k
    term that formally belongs in the sum drops out identically: its
    spectral coefficient W0* V0 Lambda_k = Lambda_k is diagonal and P has a
    zero diagonal, so the Hadamard product annihilates it.

    Raises whatever :func:`eigen_decompose` or :func:`resolve_degeneracy`
    raise for defective or unsplittable input.
    """
    es0 = eigen_decompose(problem.A0, problem.cluster_tol)
    rotated_flags = tuple(len(c) > 1 for c in es0.clusters)
    if any(rotated_flags):
        es0, _ = resolve_degeneracy(es0, problem.A1)

    P = _difference_pinv(es0)
    V0, W_star = es0.V, es0.W_star
    A1 = problem.A1

    lambdas: list[np.ndarray] = []
    vectors: list[np.ndarray] = []
    C1 = None
    Vprev = V0
    for k in range(1, problem.order + 1):
        C = W_star @ (A1 @ Vprev)
        if k == 1:
            C1 = C
        lambdas.append(diag_of(C))
        R = -C
        if k > 1:
            T = sum(
                vectors[i - 1] * lambdas[k - i - 1][None, :] for i in range(1, k)
            )
            R = W_star @ T - C
        Vk = V0 @ (P * R)
        vectors.append(Vk)
        Vprev = Vk

    W1 = ((P * C1) @ W_star).conj().T
    return ExpansionTerms(es0, tuple(lambdas), tuple(vectors), W1, rotated_flags)


def evaluate(terms, eps):
    """Partial sums Lambda(eps) and V(eps) of the expansion.

    Returns the eigenvalue vector and eigenvector matrix of the truncated
    series at the given eps.
    """
    lam = terms.base.eigenvalues.astype(np.complex128)
    V = terms.base.V.astype(np.complex128)
    p = 1.0
    for lam_k, V_k in zip(terms.Lambda, terms.V):
        p = p * eps
        lam = lam + p * lam_k
        V = V + p * V_k
    return lam, V
