"""
How fast the Robin resolvent approaches the Dirichlet one
==========================================================

In the diagonal model the gap has eigenvalues ``w_n / (beta + lambda_check_n)``.
The operator norm decays like ``1/beta`` while the trace norm picks up a
logarithm: ``beta * S_1 ~ 2 pi log(beta)``.
"""

import math

from robin_gap import gap_model

model = gap_model.build_model(2000)
grid = gap_model.beta_grid(1e2, 1e6, 9)

rows = []
for beta in grid:
    op = gap_model.operator_norm_gap(model, beta)
    s1, tail = gap_model.schatten_norm_gap(model, beta, 1.0)
    rows.append((beta, op, s1))
    print(f"beta={beta:9.3e}  ||.||={op:.6e}  S1 in [{s1:.6e}, {s1 + tail:.6e}]  beta*S1={beta * s1:8.4f}")

fit = gap_model.rate_fit([(b, op) for b, op, _ in rows])
print(f"operator norm exponent {fit.exponent:.4f} (r^2 {fit.r_squared:.6f})")
lin = gap_model.log_linear_fit([(b, b * s1) for b, _, s1 in rows])
print(f"beta*S1 = {lin.intercept:.3f} + {lin.slope:.4f} log(beta); 2 pi = {2 * math.pi:.4f}")

dinf, dtail = gap_model.schatten_norm_dinf(model, 1.0)
print(f"trace of D_inf in [{dinf:.6f}, {dinf + dtail:.6f}]")
