"""Acceptance criteria, one PASS/FAIL line each (see the terminal summary).

Tolerances and sample sizes are the pinned acceptance values; none are
loosened here.  Reference ordinates are bracketed in this file with
brentq on mpmath's Hardy Z function rather than trusted from outside.
"""

import math
import time

import mpmath
import numpy as np
import pytest
from scipy.optimize import brentq

from zetaflow import flow, gfun, hermite, scan, specfun
from zetaflow.cli import run

ORDINATES = (14.134725141734693, 21.022039638771555, 25.010857580145688)


@pytest.fixture(scope="module")
def bracketed_ordinates():
    found = []
    for t in ORDINATES:
        r = brentq(lambda x: float(mpmath.siegelz(x)), t - 0.05, t + 0.05, xtol=1e-14, rtol=1e-15)
        assert abs(r - t) < 1e-12
        found.append(r)
    return found


def test_c01_zeta_oracle(report):
    t0 = time.perf_counter()
    e2 = abs(specfun.zeta(2).value - math.pi**2 / 6)
    e3 = abs(specfun.zeta(3).value - 1.2020569031595943)
    rng = np.random.default_rng(20240101)
    worst = 0.0
    for _ in range(200):
        z = complex(rng.uniform(1.5, 10.0), rng.uniform(-50.0, 50.0))
        a = specfun.zeta(z)
        b = specfun.zeta_direct(z, 100_000)
        worst = max(worst, abs(a.value - b.value) / (a.abs_err + b.abs_err))
    dt = time.perf_counter() - t0
    ok = e2 <= 1e-12 and e3 <= 1e-12 and worst <= 1.0 and dt < 5.0
    report("criterion 1 zeta oracle", ok,
           f"|d zeta(2)| {e2:.1e}, |d zeta(3)| {e3:.1e}, max diff/bound {worst:.2e}, {dt:.1f}s")
    assert ok


def test_c02_g_identity(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        z = complex(rng.uniform(0.1, 3.0), rng.uniform(-30.0, 30.0))
        worst = max(worst, abs(gfun.g_integral(z).value - gfun.g_identity(z).value))
    g1 = abs(gfun.g_integral(1.0).value - math.log(2))
    g2 = abs(gfun.g_integral(2.0).value - math.pi**2 / 12)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-7 and g1 <= 1e-9 and g2 <= 1e-9 and dt < 30.0
    report("criterion 2 G integral vs identity", ok,
           f"max gap {worst:.1e}, |g(1) - ln 2| {g1:.1e}, |g(2) - pi^2/12| {g2:.1e}, {dt:.1f}s")
    assert ok


def test_c03_fourier_relation(report):
    t0 = time.perf_counter()
    worst = max(gfun.fourier_relation_residual(s, float(t))
                for s in (0.55, 0.75, 1.0, 1.5, 2.0) for t in range(31))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-7 and dt < 60.0
    report("criterion 3 Fourier relation", ok, f"max residual {worst:.1e}, {dt:.1f}s")
    assert ok


def test_c04_hermite_suite(report):
    t0 = time.perf_counter()
    # orthonormality: trapezoid on a wide fine grid is spectrally accurate for these integrands
    dx = 0.01
    x = np.arange(-25.0, 25.0 + dx / 2, dx)
    tab = hermite.psi_table(30, x)
    gram = dx * tab @ tab.T
    orth = float(np.max(np.abs(gram - np.eye(31))))
    # Fourier transform of psi_n by quadrature against (-i)**n psi_n
    ts = np.linspace(-6.0, 6.0, 25)
    kern = np.exp(-1j * np.outer(ts, x)) * dx / math.sqrt(2 * math.pi)
    tab20 = tab[:21]
    ft = kern @ tab20.T  # (len(ts), 21)
    expect = (np.array([(-1j) ** n for n in range(21)]) * hermite.psi_table(20, ts).T)
    fterr = float(np.max(np.abs(ft - expect)))
    # three routes to v_hat
    tt = np.linspace(-10.0, 10.0, 81)
    three = 0.0
    for sigma in (0.75, 1.0):
        hc = hermite.expand(sigma, 120)
        r_herm = hermite.reconstruct_hat(hc, tt)
        r_quad = np.array([gfun.v_hat(sigma, t).value for t in tt])
        r_ident = np.array([gfun.g_identity(complex(sigma, -t)).value for t in tt]) / gfun.SQRT_2PI
        three = max(three, float(np.max(np.abs(r_herm - r_quad))),
                    float(np.max(np.abs(r_herm - r_ident))), float(np.max(np.abs(r_quad - r_ident))))
    dt = time.perf_counter() - t0
    ok = orth <= 1e-9 and fterr <= 1e-8 and three <= 5e-4 and dt < 60.0
    report("criterion 4 Hermite suite", ok,
           f"orthonormality {orth:.1e}, FT eigen {fterr:.1e}, three-route {three:.1e}, {dt:.1f}s")
    assert ok


def test_c05_flow_decay(report):
    t0 = time.perf_counter()
    cfg = flow.FlowConfig(rel_tol=1e-9)
    rng = np.random.default_rng(5)
    starts = rng.uniform(0.3, 0.9, 20) + 1j * rng.uniform(10.0, 30.0, 20)
    trs = flow.integrate_many(starts, cfg)
    worst = max(tr.decay_residual_max for tr in trs)
    budget = 10 * cfg.rel_tol * cfg.t_max
    dt = time.perf_counter() - t0
    ok = worst <= budget and dt < 30.0
    report("criterion 5 flow decay invariant", ok,
           f"max residual {worst:.1e} vs budget {budget:.0e}, {dt:.1f}s")
    assert ok


def test_c06_zero_reproduction(report, bracketed_ordinates):
    t0 = time.perf_counter()
    worst_im = worst_re = 0.0
    ok = True
    for z0, ordinate in zip((0.6 + 14j, 0.4 + 21j, 0.7 + 25j), bracketed_ordinates):
        out = flow.integrate(z0).outcome
        if not isinstance(out, flow.ConvergedToZero):
            ok = False
            continue
        worst_im = max(worst_im, abs(out.alpha.imag - ordinate))
        worst_re = max(worst_re, abs(out.alpha.real - 0.5))
    dt = time.perf_counter() - t0
    ok = ok and worst_im <= 1e-6 and worst_re <= 1e-9 and dt < 10.0
    report("criterion 6 zero reproduction", ok,
           f"max |d Im| {worst_im:.1e}, max |Re - 1/2| {worst_re:.1e}, {dt:.1f}s")
    assert ok


def test_c07_stability(report, bracketed_ordinates):
    lams = [flow.stability_eigen(flow.refine_zero(complex(0.5, t))) for t in bracketed_ordinates]
    worst = max(abs(lam + 1) for lam in lams)
    ok = worst <= 1e-4
    report("criterion 7 stability eigenvalue", ok, f"max |lambda + 1| {worst:.1e}")
    assert ok


def test_c08_sandwich(report):
    rng = np.random.default_rng(8)
    fails = 0
    for _ in range(1000):
        z = complex(1.001 + rng.exponential(3.0), rng.uniform(-100.0, 100.0))
        fails += not specfun.sandwich_bounds(z).holds
    far = [abs(specfun.zeta(complex(50.0, t)).value) for t in (0.0, 10.0)]
    far_ok = all(1 - 1e-14 <= v <= 1 + 1e-14 for v in far)
    ok = fails == 0 and far_ok
    report("criterion 8 sandwich bounds", ok,
           f"{fails}/1000 outside, |zeta(50 + it)| - 1 = {max(abs(v - 1) for v in far):.1e}")
    assert ok


def test_c09a_scan_first_zero(report):
    t0 = time.perf_counter()
    rep = scan.scan_vhat(0.5, 10, 20, 0.01)
    dt = time.perf_counter() - t0
    ok = abs(rep.global_min_t - 14.1347) <= 1e-3 and rep.global_min_value < 1e-6 and dt < 60.0
    report("criterion 9 scan at sigma = 1/2", ok,
           f"global min at t = {rep.global_min_t:.6f}, value {rep.global_min_value:.1e}")
    assert ok


def test_c09b_scan_off_line(report):
    t0 = time.perf_counter()
    rep = scan.scan_vhat(0.75, 0, 50, 0.01)
    deep = [(t, v) for t, v in rep.local_minima if v < 1e-4]
    misses = []
    for t, v in deep:
        w = scan.zero_witness(0.75, t)
        if w is None or abs(w.real - 0.5) > 1e-9:
            misses.append(t)
    dt = time.perf_counter() - t0
    ok = rep.positive_floor > 0 and not misses and dt < 60.0
    report("criterion 9 scan at sigma = 3/4 (floor and witnesses)", ok,
           f"floor {rep.positive_floor:.1e}, {len(deep)} minima below 1e-4, "
           f"no Re = 1/2 witness from t = {', '.join(f'{t:.3f}' for t in misses) or 'none'}")
    assert ok


def _basin_csv(monkeypatch, threads):
    import io

    monkeypatch.setenv("ZETAFLOW_THREADS", str(threads))
    out = io.StringIO()
    code = run(["basin", "--re-min", "0.05", "--re-max", "0.95", "--im-min", "10", "--im-max", "30",
                "--nx", "100", "--ny", "100"], stdout=out)
    assert code == 0
    return out.getvalue()


@pytest.fixture(scope="module")
def basin_outputs():
    mp = pytest.MonkeyPatch()
    try:
        t0 = time.perf_counter()
        one = _basin_csv(mp, 1)
        t1 = time.perf_counter()
        many = _basin_csv(mp, 4)
        t2 = time.perf_counter()
    finally:
        mp.undo()
    return one, many, (t1 - t0, t2 - t1)


def test_c10a_basin_determinism(report, basin_outputs):
    one, many, (d1, d4) = basin_outputs
    ok = one == many
    report("criterion 10 basin byte-identical across thread counts", ok,
           f"{len(one)} bytes, 1 thread {d1:.0f}s, 4 threads {d4:.0f}s")
    assert ok


def test_c10b_basin_labels(report, basin_outputs, bracketed_ordinates):
    one = basin_outputs[0]
    zeros = {}
    labels = []
    for line in one.splitlines()[1:]:
        if line.startswith("# zero,") and not line.startswith("# zero,idx"):
            _, idx, re_, im_ = line[2:].split(",")
            zeros[int(idx)] = complex(float(re_), float(im_))
        elif not line.startswith("#"):
            labels.append(int(line.split(",")[-1]))
    known = [complex(0.5, t) for t in bracketed_ordinates]
    outside = {i: z for i, z in zeros.items() if min(abs(z - k) for k in known) > 1e-6}
    bad_cells = sum(1 for lab in labels if lab in outside)
    ok = not outside and all(lab < 0 or lab in zeros for lab in labels)
    counts = {i: labels.count(i) for i in zeros}
    report("criterion 10 every converged label is one of the three zeros", ok,
           f"registry {[round(z.imag, 6) for z in zeros.values()]}, cells per zero {counts}, "
           f"{bad_cells} cells reach a zero outside the three")
    assert ok
