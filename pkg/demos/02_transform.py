# G(z) = int_0^inf u^(z-1) / (1 + e^u) du two ways, and its Fourier picture.
# Run: python demos/02_transform.py

import math

from zetaflow import gfun

# %%
for z in (1.0, 2.0, 0.3 + 2j, 0.75 + 5j):
    a = gfun.g_integral(z)
    b = gfun.g_identity(z)
    print(f"G({z}): quadrature {a.value:.12g}  eta*Gamma {b.value:.12g}  gap {abs(a.value - b.value):.1e}")
print("ln 2 =", math.log(2), "  pi^2/12 =", math.pi**2 / 12)

# %%
# On a vertical line the integral is the Fourier transform of V_sigma.
sigma = 0.75
print("mass of V_sigma:", gfun.density_normalizer(sigma))
for t in (0.0, 5.0, 14.13):
    print(f"t = {t:5}: sqrt(2 pi) v_hat(-t) vs G residual {gfun.fourier_relation_residual(sigma, t):.1e}")
