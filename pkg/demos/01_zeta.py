# Evaluating zeta in the critical strip through the alternating eta series.
# Run: python demos/01_zeta.py

import math

import numpy as np

from zetaflow import specfun

# %%
# Values carry an a priori error bound and the number of series terms used.
for z in (2, 3, 0.5 + 14.134725141734693j, 0.5 + 100j):
    v = specfun.zeta(z)
    print(f"zeta({z}) = {v.value:.15g}   err <= {v.abs_err:.1e}   terms {v.terms_used}")

print("pi^2/6 =", math.pi**2 / 6)

# %%
# The plain Dirichlet sum converges only for Re z > 1 and slowly near it.
z = 1.5 + 4j
for n in (10**3, 10**5):
    d = specfun.zeta_direct(z, n)
    print(f"N = {n:>6}: |direct - accelerated| = {abs(d.value - specfun.zeta(z).value):.2e}"
          f"  (bound {d.abs_err:.1e})")

# %%
# Moebius coefficients give 1/zeta as a Dirichlet series.
z = 3 + 1j
inv = specfun.inverse_zeta_series(z, 10_000)
print("zeta * sum mu(n) n^-z =", inv.value * specfun.zeta(z).value)

# %%
# For Re z > 1, |zeta| sits between (s - 1)/s and s/(s - 1).
rng = np.random.default_rng(0)
for _ in range(3):
    z = complex(1.0 + rng.exponential(1.0), rng.uniform(-50, 50))
    b = specfun.sandwich_bounds(z)
    print(f"{b.lower:.4f} < |zeta({z:.3f})| = {b.value_abs:.4f} < {b.upper:.4f}: {b.holds}")
