"""
Coefficients of the large-coupling expansion
============================================

``lambda(beta) = c0 + c1/beta + c2/beta^2 + ...`` is extracted by Richardson
extrapolation from exact Robin eigenvalues and compared with ``k^2``, ``-2k^2``
and the trace-formula coefficient ``alpha``.
"""

from robin_gap import asymptotics

for row in asymptotics.coefficient_comparison([0, 1, 2], [1, 2]):
    print(f"({row.n},{row.m})  c1={row.c1:.10f} (rel err {row.c1_relerr:.1e})  "
          f"c2={row.c2:.6f} vs 2k^2 {row.c2_oracle:.6f}  alpha={row.alpha:.9f}")

# the alpha series converges like q^-2; its tail is summed through Rayleigh sums
terms = asymptotics.alpha_summands(0, 1, 64)
print("truncated cross-space sum:", terms.cross_space, " tail estimate:", terms.cross_tail,
      " bound:", terms.tail_bound)

# the normalised Robin profile drifts off the Dirichlet mode like beta^-2
for beta in (1e3, 1e4, 1e5):
    lo, hi = asymptotics.projection_drift_bounds(0, 1, beta)
    print(f"beta={beta:.0e}  1 - <u, f>^2 in [{lo:.6e}, {hi:.6e}]")
