"""Brute-force validation: remainder decay rates over an eps grid.

A K-th order expansion must miss the exact eigendata by O(eps^(K+1)).  The
validator samples exact eigendecompositions on a log grid, aligns them with
the expansion's normalization, and fits the decay exponent.  Here the
eigenvalue remainder of the K=2 expansion decays like eps^4 because the
cubic term of this family vanishes.
"""

import numpy as np

from eigenpert import PerturbationProblem, expand, taylor_remainder_slopes

A0 = np.diag([1.0, 2.0])
A1 = np.array([[0.0, 1.0], [1.0, 0.0]])

for order in (1, 2, 3):
    problem = PerturbationProblem(A0, A1, order=order)
    report = taylor_remainder_slopes(problem, expand(problem))
    print(f"K={order}: lambda slope {report.fitted_slope_lambda:5.2f}   "
          f"vector slope {report.fitted_slope_V:5.2f}   pass={report.passed}")

problem = PerturbationProblem(A0, A1, order=2)
report = taylor_remainder_slopes(problem, expand(problem))
print("\n  eps        lambda error    vector error")
for eps, le, ve in zip(report.eps_grid, report.lambda_errors, report.vector_errors):
    print(f"{eps:8.1e}   {le:12.3e}   {ve:12.3e}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(report.eps_grid, report.lambda_errors, "o-", label="eigenvalues")
    ax.loglog(report.eps_grid, report.vector_errors, "s-", label="eigenvectors")
    ax.set_xlabel("eps")
    ax.set_ylabel("remainder")
    ax.set_title("K=2 expansion remainders")
    ax.legend()
    fig.tight_layout()
    fig.savefig("remainder_validation.png", dpi=120)
    print("\nwrote remainder_validation.png")
except ImportError:
    pass
