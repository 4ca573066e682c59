"""
Robin eigenvalues of the disc between Neumann and Dirichlet
===========================================================

As the coupling grows, each Robin eigenvalue climbs from the Neumann value
``k'^2`` to the Dirichlet value ``k^2``.
"""

import numpy as np

from robin_gap import disc_spectrum

n, m = 0, 1
mode = disc_spectrum.disc_mode(n, m)
print(f"mode ({n},{m}): Neumann {mode.neumann_eigenvalue:.6f}, Dirichlet {mode.dirichlet_eigenvalue:.12f}")

for beta in [0.0, 0.1, 1.0, 10.0, 1e2, 1e3, 1e4, 1e6]:
    ev = disc_spectrum.robin_eigenvalue(n, m, beta)
    # beta * (lambda - k^2) tends to -2 k^2
    scaled = beta * ev.dirichlet_shift if beta else float("nan")
    print(f"beta={beta:9.1e}  lambda={ev.lam:.15f}  beta*(lambda-k^2)={scaled:12.6f}  residual={ev.residual:.1e}")

print("-2 k^2 =", -2 * mode.dirichlet_eigenvalue)

# the ordering survives across radial indices
betas = np.logspace(-2, 8, 6)
for m in range(1, 4):
    lams = [disc_spectrum.robin_eigenvalue(2, m, b).lam for b in betas]
    print(f"(2,{m}): " + "  ".join(f"{v:10.5f}" for v in lams))
