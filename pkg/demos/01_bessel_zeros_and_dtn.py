"""
Bessel zeros and the Dirichlet-to-Neumann spectrum
==================================================

Zeros of ``J_n`` and ``J'_n`` interlace, and the Dirichlet-to-Neumann map of
``-Delta + 1`` on the circle has one eigenvalue in each window ``(n, n + 1/2)``.
"""

from robin_gap import dtn_circle, specfun

# the first few Dirichlet (J_n) and Neumann (J'_n) zeros
for n in range(3):
    chain = []
    for m in range(1, 4):
        chain += [specfun.neumann_zero(n, m), specfun.dirichlet_zero(n, m)]
    print(f"n={n}: " + "  ".join(f"{z:.6f}" for z in chain))

# every zero comes with a bracket and a residual
z = specfun.find_zero("dirichlet", 5, 7)
print(f"k_5,7 = {z.value!r} in [{z.bracket[0]!r}, {z.bracket[1]!r}], residual {z.residual:.1e}")

# lambda_check_n = n + I_{n+1}(1)/I_n(1); the weight w_n = lambda_check^2 gamma^2 decays like pi/n
for n in (0, 1, 10, 100, 1000):
    lo, hi = dtn_circle.weight_envelope(n)
    print(f"n={n:5d}  lambda_check={dtn_circle.dtn_eigenvalue(n):.12f}  "
          f"w={dtn_circle.weight(n):.6e}  envelope=({lo:.6e}, {hi:.6e})")

# gamma_n^2 from its defining series, with a certified bound on the truncated part
value, tail = dtn_circle.gamma_sq(1, 64)
print(f"gamma_1^2: closed form {dtn_circle.gamma_sq_closed(1)!r}, series {value!r} + [0, {tail:.2e}]")
