"""Identity suite run by ``zetaflow verify``.

Each check re-derives one relation from independent computations and
returns ``(passed, detail)``.  ``quick`` shrinks the sample sizes so the
whole suite finishes in a few seconds.
"""

from __future__ import annotations

import math

import numpy as np

from . import flow, gfun, hermite, scan, specfun

KNOWN_ORDINATES = (14.134725141734693, 21.022039638771555, 25.010857580145688)


def check_zeta_values(quick: bool):
    e2 = abs(specfun.zeta(2).value - math.pi**2 / 6)
    e3 = abs(specfun.zeta(3).value - 1.2020569031595943)
    return max(e2, e3) <= 1e-12, f"max error {max(e2, e3):.2e}"


def check_zeta_direct(quick: bool):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10 if quick else 50):
        z = complex(rng.uniform(2.0, 10.0), rng.uniform(-50.0, 50.0))
        a = specfun.zeta(z)
        b = specfun.zeta_direct(z, 20000)
        worst = max(worst, abs(a.value - b.value) / (a.abs_err + b.abs_err))
    return worst <= 1.0, f"max |diff| / error budget {worst:.2e}"


def check_g_routes(quick: bool):
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(10 if quick else 100):
        z = complex(rng.uniform(0.1, 3.0), rng.uniform(-30.0, 30.0))
        worst = max(worst, abs(gfun.g_integral(z).value - gfun.g_identity(z).value))
    return worst <= 1e-7, f"max |integral - identity| {worst:.2e}"


def check_fourier_relation(quick: bool):
    ts = range(0, 31, 10) if quick else range(31)
    worst = max(gfun.fourier_relation_residual(s, t) for s in (0.55, 0.75, 1.0, 1.5, 2.0) for t in ts)
    return worst <= 1e-7, f"max residual {worst:.2e}"


def check_hermite_routes(quick: bool):
    ts = np.linspace(-10.0, 10.0, 21 if quick else 81)
    worst = 0.0
    for sigma in (0.75, 1.0):
        hc = hermite.expand(sigma, 120)
        approx = hermite.reconstruct_hat(hc, ts)
        exact = np.array([gfun.v_hat(sigma, t).value for t in ts])
        worst = max(worst, float(np.max(np.abs(approx - exact))))
    return worst <= 5e-4, f"max |hermite - quadrature| {worst:.2e}"


def check_flow_decay(quick: bool):
    cfg = flow.FlowConfig()
    rng = np.random.default_rng(3)
    n = 2 if quick else 20
    starts = rng.uniform(0.3, 0.9, n) + 1j * rng.uniform(10.0, 30.0, n)
    trs = flow.integrate_many(starts, cfg)
    worst = max(tr.decay_residual_max for tr in trs)
    budget = 10 * cfg.rel_tol * cfg.t_max
    return worst <= budget, f"max decay residual {worst:.2e} (budget {budget:.1e})"


def check_zero_reproduction(quick: bool):
    starts = (0.6 + 14j, 0.4 + 21j, 0.7 + 25j)
    pairs = list(zip(starts, KNOWN_ORDINATES))[: 1 if quick else 3]
    worst_im = worst_re = 0.0
    for z0, ordinate in pairs:
        out = flow.integrate(z0).outcome
        if not isinstance(out, flow.ConvergedToZero):
            return False, f"start {z0} ended {out.kind}"
        worst_im = max(worst_im, abs(out.alpha.imag - ordinate))
        worst_re = max(worst_re, abs(out.alpha.real - 0.5))
    return worst_im <= 1e-6 and worst_re <= 1e-9, f"|d Im| {worst_im:.1e}, |d Re| {worst_re:.1e}"


def check_stability(quick: bool):
    worst = 0.0
    for ordinate in KNOWN_ORDINATES[: 1 if quick else 3]:
        alpha = flow.refine_zero(complex(0.5, ordinate))
        worst = max(worst, abs(flow.stability_eigen(alpha) + 1.0))
    return worst <= 1e-4, f"max |phi'(alpha) + 1| {worst:.1e}"


def check_sandwich(quick: bool):
    rng = np.random.default_rng(5)
    n = 100 if quick else 1000
    fails = 0
    for _ in range(n):
        z = complex(1.001 + rng.exponential(2.0), rng.uniform(-100.0, 100.0))
        fails += not specfun.sandwich_bounds(z).holds
    return fails == 0, f"{fails} of {n} samples outside the bounds"


def check_scan(quick: bool):
    rep = scan.scan_vhat(0.5, 10.0, 20.0, 0.01)
    ok = abs(rep.global_min_t - 14.1347) <= 1e-3 and rep.global_min_value < 1e-6
    return ok, f"min at t = {rep.global_min_t:.6f}, value {rep.global_min_value:.1e}"


CHECKS = [
    ("zeta_values", check_zeta_values),
    ("zeta_vs_direct_sum", check_zeta_direct),
    ("g_integral_vs_identity", check_g_routes),
    ("fourier_relation", check_fourier_relation),
    ("hermite_three_route", check_hermite_routes),
    ("flow_decay_invariant", check_flow_decay),
    ("zero_reproduction", check_zero_reproduction),
    ("stability_eigenvalue", check_stability),
    ("sandwich_bounds", check_sandwich),
    ("scan_first_zero", check_scan),
]


def run_checks(quick: bool = False):
    """Run every check; yields (name, passed, detail)."""
    for name, fn in CHECKS:
        try:
            passed, detail = fn(quick)
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        yield name, bool(passed), detail
