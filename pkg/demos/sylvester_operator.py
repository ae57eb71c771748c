"""The Sylvester map L(X) = A X + X B as a spectral object.

Once the eigensystems of A and B are in hand, L acts diagonally on rank-1
frames and everything follows from one table of eigenvalue sums: inversion,
the minimum-norm pseudo-inverse with its solvability certificate, analytic
functions of L, and the propagator of dX/dt = A X + X B.
"""

import numpy as np

from eigenpert import build_operator

rng = np.random.default_rng(7)

A = rng.standard_normal((3, 3))
B = rng.standard_normal((3, 3))
op = build_operator(A, B)
print("operator eigenvalue table Pi:\n", np.round(op.Pi.real, 4))

Q = rng.standard_normal((3, 3))
X = op.solve(Q)
print("solve residual:", np.linalg.norm(op.apply(X) - Q))

# A structurally singular operator: B = -A makes the diagonal frames kernel
# elements, and a right-hand side is solvable iff its spectral diagonal is 0.
op = build_operator(A, -A)
print("\nsingular positions:", op.zero_positions())
good = op.apply(rng.standard_normal((3, 3)))
report = op.pseudo_solve(good)
print("in-range rhs:   solvable =", report.solvable, " residual =", f"{report.residual:.2e}")
report = op.pseudo_solve(np.eye(3))
print("identity rhs:   solvable =", report.solvable,
      " violated =", report.violated_positions)

# Propagator: closed-form solution of the matrix ODE, semigroup in t.
op = build_operator(-np.eye(2) + np.diag([0.0, -1.0]), np.diag([-0.5, -2.0]))
X0 = np.array([[1.0, 2.0], [3.0, 4.0]])
Xt = op.propagate(X0, 1.0)
Xtt = op.propagate(op.propagate(X0, 0.5), 0.5)
print("\npropagator semigroup gap:", np.linalg.norm(Xt - Xtt))
print("X(1.0) =\n", np.round(Xt, 6))
