# Expanding V_sigma in Hermite functions; the Fourier transform acts diagonally.
# Run: python demos/03_hermite.py

import numpy as np

from zetaflow import gfun, hermite

sigma = 1.0
x = np.linspace(-8, 3, 200)
exact = gfun.v_sigma(sigma, x)

# %%
for n in (10, 40, 80, 160):
    hc = hermite.expand(sigma, n)
    print(f"N = {n:>3}: max |V - partial sum| = {np.max(np.abs(hermite.reconstruct(hc, x) - exact)):.2e}")

# %%
# Bessel: the captured energy approaches ||V_sigma||^2 from below.
hc = hermite.expand(sigma, 160)
print("captured", hermite.bessel_partial_sums(hc)[-1], "of", hermite.kernel_l2_sq(sigma))

# %%
# Transform by multiplying coefficients with (-i)^n, then compare with quadrature.
t = np.linspace(-10, 10, 9)
approx = hermite.reconstruct_hat(hc, t)
quad = np.array([gfun.v_hat(sigma, s).value for s in t])
print("max |hermite hat - quadrature| =", np.max(np.abs(approx - quad)))
