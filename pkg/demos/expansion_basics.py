"""Walk through a perturbation expansion on an exactly solvable 2x2 family.

The family A(eps) = diag(1, 2) + eps * swap has eigenvalues
(3 -+ sqrt(1 + 4 eps^2))/2, so every expansion coefficient is known in
closed form and the truncation error can be watched order by order.
"""

import numpy as np

from eigenpert import PerturbationProblem, evaluate, expand

A0 = np.diag([1.0, 2.0])
A1 = np.array([[0.0, 1.0], [1.0, 0.0]])

problem = PerturbationProblem(A0, A1, order=4)
terms = expand(problem)

print("base eigenvalues:", terms.base.eigenvalues.real)
for k, (lam_k, V_k) in enumerate(zip(terms.Lambda, terms.V), start=1):
    print(f"order {k}: Lambda_{k} = {np.round(lam_k.real, 12)}")
    print(f"         V_{k} =\n{np.round(V_k.real, 12)}")

# The exact eigenvalues, for comparison with the truncated series.
def exact(eps):
    root = np.sqrt(1 + 4 * eps**2)
    return np.array([(3 - root) / 2, (3 + root) / 2])

print("\n eps      |exact - series|   expected ~ 2 eps^6")
for eps in (0.3, 0.1, 0.03, 0.01):
    lam, _ = evaluate(terms, eps)
    err = np.max(np.abs(exact(eps) - lam.real))
    print(f"{eps:6.3f}   {err:12.3e}        {2 * eps**6:12.3e}")
