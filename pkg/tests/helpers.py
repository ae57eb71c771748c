"""Shared generators and independent oracles for the test suite."""

import numpy as np

from eigenpert import PerturbationProblem


def random_eigenvalues(rng, n, separation=0.1, box=2.0):
    """Complex eigenvalues in a box with guaranteed pairwise separation."""
    while True:
        lam = rng.uniform(-box, box, n) + 1j * rng.uniform(-box, box, n)
        if n == 1:
            return lam
        dist = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(dist, np.inf)
        if dist.min() >= separation:
            return lam


def random_basis(rng, n, max_cond=20.0):
    while True:
        V = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if np.linalg.cond(V) <= max_cond:
            return V


def random_matrix(rng, n, frobenius=0.3):
    """Gaussian perturbation, modest scale so eps <= 0.1 stays well inside the
    convergence region of the ensembles (separation >= 0.1)."""
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return G * (frobenius / np.linalg.norm(G))


def random_diagonalizable(rng, n, separation=0.1):
    """A0 = V diag(lam) V^-1 with separated eigenvalues, cond(V) <= 50."""
    lam = random_eigenvalues(rng, n, separation)
    V = random_basis(rng, n)
    return V @ np.diag(lam) @ np.linalg.inv(V)


def random_problem(rng, order=3, sizes=(3, 4, 5, 6), separation=0.1):
    n = int(rng.choice(sizes))
    return PerturbationProblem(
        random_diagonalizable(rng, n, separation), random_matrix(rng, n), order=order
    )


def random_symmetric_problem(rng, n, order=3, separation=0.1):
    """Real symmetric A0 (separated spectrum) and real symmetric A1."""
    while True:
        G = rng.standard_normal((n, n))
        A0 = (G + G.T) / 2
        w = np.linalg.eigvalsh(A0)
        if np.diff(np.sort(w)).min() >= separation:
            break
    G = rng.standard_normal((n, n))
    A1 = (G + G.T) / (2 * np.sqrt(n))
    return PerturbationProblem(A0, A1, order=order)


def random_normal_matrix(rng, n):
    """Unitary eigenvectors, random complex spectrum."""
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, _ = np.linalg.qr(G)
    lam = random_eigenvalues(rng, n, separation=0.05)
    return Q @ np.diag(lam) @ Q.conj().T, lam, Q


def sylvester_kron(A, B):
    """Matrix of X -> A X + X B acting on column-stacked vec(X)."""
    nA, nB = A.shape[0], B.shape[0]
    return np.kron(np.eye(nB), A) + np.kron(B.T, np.eye(nA))


def vec(X):
    return np.asarray(X).reshape(-1, order="F")


def unvec(x, shape):
    return np.asarray(x).reshape(shape, order="F")
