"""Repeated eigenvalues: the perturbation picks the basis.

With A0 = I the unperturbed eigenvectors are arbitrary, but only one basis
of the degenerate eigenspace admits a power series under eps * swap: the
one that diagonalizes the perturbation on the cluster.  The expansion
machinery finds it automatically, and on this family the rotated series is
exact at first order.
"""

import numpy as np

from eigenpert import PerturbationProblem, eigen_decompose, expand, resolve_degeneracy

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])

es = eigen_decompose(np.eye(2))
print("clusters of I2:", es.clusters)

rotated, lam1 = resolve_degeneracy(es, SWAP)
print("rotated eigenvectors (columns):\n", np.round(rotated.V.real, 12))
print("first-order splitting:", lam1.real)

terms = expand(PerturbationProblem(np.eye(2), SWAP, order=3))
print("\nhigher orders vanish identically:")
for k in range(1, 4):
    print(f"  |Lambda_{k}| = {np.max(np.abs(terms.Lambda[k - 1])):.1e}   "
          f"|V_{k}| = {np.max(np.abs(terms.V[k - 1])):.1e}")

# A cluster embedded in a larger matrix: the rotation only touches its block.
A0 = np.diag([1.0, 1.0, 5.0])
A1 = np.zeros((3, 3))
A1[:2, :2] = SWAP
A1[2, 2] = 9.0
terms = expand(PerturbationProblem(A0, A1, order=2))
print("\n3x3 with a 2-cluster: Lambda_1 =", np.round(terms.Lambda[0].real, 12))
print("rotated flags per cluster:", terms.rotated)
print("eigenvector of the isolated eigenvalue is untouched:",
      np.allclose(terms.base.V[:, 2], [0, 0, 1]))
