# Following dz/dt = -zeta(z)/zeta'(z) to a zero, and checking |zeta(z(t))| = e^-t |zeta(z0)|.
# Run: python demos/04_newton_flow.py

import math

from zetaflow import flow

# %%
for z0 in (0.6 + 14j, 0.4 + 21j, 0.7 + 25j):
    tr = flow.integrate(z0)
    print(f"{z0}: {tr.outcome.kind} at {tr.outcome.point:.15g} after t = {tr.t_end:.1f}, "
          f"{tr.steps} steps, decay residual {tr.decay_residual_max:.1e}")

# %%
tr = flow.integrate(0.6 + 14j)
for t, z, za in tr.samples[::50]:
    print(f"t = {t:5.1f}  z = {z:.6f}  |zeta| = {za:.3e}  e^-t |zeta(z0)| = {math.exp(-t) * tr.samples[0][2]:.3e}")

# %%
# Every simple zero is an attracting point with linearisation -1.
alpha = flow.refine_zero(0.5 + 14.1j)
print("phi'(alpha) =", flow.stability_eigen(alpha))

# %%
# On the real axis beyond 1, zeta' < 0, so the flow runs right until zeta' underflows.
tr = flow.integrate(5.0)
print("start 5:", tr.outcome, "at t =", tr.t_end)
