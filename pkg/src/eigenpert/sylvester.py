"""The Sylvester map X -> A X + X B as a first-class spectral object.

For diagonalizable A and B the map acts diagonally on the rank-1 frames
v_i z_j* built from the right eigenvectors of A and the left eigenvectors of
B, with eigenvalue lambda_i + gamma_j.  Storing both eigensystems once makes
inversion, pseudo-inversion, analytic functions and the matrix-ODE
propagator all one Hadamard product away.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import SingularOperatorError
from .spectral import (
    EigenSystem,
    _as_matrix,
    eigen_decompose,
    hadamard_pseudo_inverse,
)

__all__ = ["SylvesterOperator", "SolveReport", "build_operator", "DEFAULT_CERT_TOL"]

DEFAULT_CERT_TOL = 1e-8


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a pseudo-inverse solve.

    ``residual`` is ``||A X + X B - Q||_F / max(1, ||Q||_F)``;
    ``violated_positions`` lists the (i, j) spectral positions where the
    right-hand side has a component along a zero eigenvalue of the operator,
    which is exactly when the equation is unsolvable.
    """

    X: np.ndarray
    residual: float
    solvable: bool
    violated_positions: list[tuple[int, int]]


@dataclass(frozen=True)
class SylvesterOperator:
    """Spectral representation of ``L(X) = A X + X B``.

    ``Pi[i, j] = esA.eigenvalues[i] + esB.eigenvalues[j]`` tabulates the
    operator's eigenvalues; entries with ``|Pi[i, j]| <= zero_tol`` are
    treated as exact zeros.  ``cond`` is ``cond(V_A) * cond(V_B)``, the
    factor by which spectral-coordinate round-trips lose accuracy.
    """

    A: np.ndarray
    B: np.ndarray
    esA: EigenSystem
    esB: EigenSystem
    Pi: np.ndarray
    zero_tol: float
    cond: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cond", self.esA.cond_V * self.esB.cond_V)
        for arr in (self.A, self.B, self.Pi):
            arr.flags.writeable = False

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of the matrices the operator acts on."""
        return (self.esA.n, self.esB.n)

    def _check_shape(self, X, name="X"):
        X = _as_matrix(X, name)
        if X.shape != self.shape:
            raise ValueError(f"{name} must have shape {self.shape}, got {X.shape}")
        return X

    def _to_spectral(self, Q):
        return self.esA.W_star @ Q @ self.esB.V

    def _from_spectral(self, C):
        return self.esA.V @ C @ self.esB.W_star

    def zero_positions(self) -> list[tuple[int, int]]:
        """Spectral positions (i, j) where the operator eigenvalue vanishes."""
        ii, jj = np.nonzero(np.abs(self.Pi) <= self.zero_tol)
        return list(zip(ii.tolist(), jj.tolist()))

    def apply(self, X):
        """A X + X B, computed directly."""
        X = self._check_shape(X)
        return self.A @ X + X @ self.B

    def apply_adjoint(self, Y):
        """Adjoint map A* Y + Y B* under the trace inner product <M, N> = tr(M* N)."""
        Y = self._check_shape(Y, "Y")
        return self.A.conj().T @ Y + Y @ self.B.conj().T

    def solve(self, Q):
        """Solve A X + X B = Q; requires every operator eigenvalue nonzero."""
        Q = self._check_shape(Q, "Q")
        singular = self.zero_positions()
        if singular:
            raise SingularOperatorError(
                f"operator singular at spectral positions {singular}; use pseudo_solve"
            )
        return self._from_spectral(self._to_spectral(Q) / self.Pi)

    def check_solvable(self, Q, cert_tol=DEFAULT_CERT_TOL):
        """Certificate that Q lies in the operator's range.

        The equation is solvable iff the spectral coefficients of Q vanish at
        every zero position of Pi; returns ``(ok, violating_positions)`` with
        the test at relative tolerance ``cert_tol * ||Q||_F``.
        """
        Q = self._check_shape(Q, "Q")
        C = self._to_spectral(Q)
        threshold = cert_tol * np.linalg.norm(Q)
        violated = [
            (i, j) for (i, j) in self.zero_positions() if abs(C[i, j]) > threshold
        ]
        return (not violated), violated

    def pseudo_solve(self, Q, cert_tol=DEFAULT_CERT_TOL):
        """Apply the spectral pseudo-inverse and report solvability.

        Zero eigenvalue components of Q are annihilated rather than divided
        by, so a result is always produced; it is the minimum-norm solution
        whenever A and B are normal and the certificate passes.
        """
        Q = self._check_shape(Q, "Q")
        C = self._to_spectral(Q)
        X = self._from_spectral(hadamard_pseudo_inverse(self.Pi, self.zero_tol) * C)
        threshold = cert_tol * np.linalg.norm(Q)
        violated = [
            (i, j) for (i, j) in self.zero_positions() if abs(C[i, j]) > threshold
        ]
        residual = float(
            np.linalg.norm(self.apply(X) - Q) / max(1.0, np.linalg.norm(Q))
        )
        return SolveReport(X, residual, not violated, violated)

    def null_space_basis(self) -> list[np.ndarray]:
        """Rank-1 frames v_i z_j* spanning the kernel (one per zero position)."""
        return [
            np.outer(self.esA.V[:, i], self.esB.W[:, j].conj())
            for (i, j) in self.zero_positions()
        ]

    def apply_function(self, f, X):
        """Evaluate f of the operator on X via entrywise application to Pi."""
        X = self._check_shape(X)
        fPi = np.empty_like(self.Pi)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            for i in range(self.Pi.shape[0]):
                for j in range(self.Pi.shape[1]):
                    try:
                        fPi[i, j] = f(self.Pi[i, j])
                    except (ArithmeticError, ValueError) as exc:
                        raise ValueError(
                            f"function undefined at operator eigenvalue {self.Pi[i, j]}"
                        ) from exc
        if not np.all(np.isfinite(fPi.real)) or not np.all(np.isfinite(fPi.imag)):
            raise ValueError("function returned a non-finite value on the spectrum")
        return self._from_spectral(fPi * self._to_spectral(X))

    def propagate(self, X0, t):
        """Solution at time t of dX/dt = A X + X B with X(0) = X0."""
        X0 = self._check_shape(X0, "X0")
        return self._from_spectral(np.exp(t * self.Pi) * self._to_spectral(X0))


def build_operator(A, B, zero_tol=None):
    """Assemble the spectral form of ``X -> A X + X B``.

    Parameters
    ----------
    A : (n, n) array_like
    B : (m, m) array_like
        Square, diagonalizable; sizes may differ.
    zero_tol : float, optional
        Threshold under which an eigenvalue sum counts as zero.  Defaults to
        ``1e-8 * max(1, max |Pi|)`` so that "zero" is consistent with the
        eigenvalue clustering scale.

    Raises
    ------
    NotSemiSimpleError
        If either matrix lacks a full eigenvector basis.
    """
    esA = eigen_decompose(A)
    esB = eigen_decompose(B)
    Pi = esA.eigenvalues[:, None] + esB.eigenvalues[None, :]
    if zero_tol is None:
        scale = np.max(np.abs(Pi)) if Pi.size else 0.0
        zero_tol = 1e-8 * max(1.0, scale)
    return SylvesterOperator(
        np.asarray(A, dtype=np.complex128).copy(),
        np.asarray(B, dtype=np.complex128).copy(),
        esA,
        esB,
        Pi,
        float(zero_tol),
    )
