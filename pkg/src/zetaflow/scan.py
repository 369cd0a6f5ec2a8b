"""Scan |V_hat_sigma(-t)| along vertical lines for near-zeros.

``sqrt(2 pi) |v_hat(sigma, -t)| = |G(sigma + i t)| = |eta(sigma + i t)| |Gamma(sigma + i t)|``,
and Gamma never vanishes, so minima of the scanned quantity that reach zero
are exactly zeta zeros (eta has none besides those of zeta in the strip
apart from the points 1 + 2 pi i k / ln 2 on Re z = 1).  The scan uses the
cheap eta * Gamma route; :func:`route_gap` audits it against quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConvergenceError, DomainError, SingularityError
from .flow import refine_zero
from .gfun import SQRT_2PI, g_identity, v_hat
from .specfun import DEFAULT_TOL, eta_batch, loggamma

__all__ = ["ScanReport", "scan_vhat", "zero_witness", "route_gap", "g_abs"]

_CHUNK = 2048
_REFINE_DT = 1e-6


@dataclass(frozen=True)
class ScanReport:
    sigma: float
    t_min: float
    t_max: float
    step: float
    global_min_value: float
    global_min_t: float
    local_minima: list  # (t, value), refined, in increasing t
    positive_floor: float


def _check_box(sigma: float, t_min: float, t_max: float, step: float | None = None):
    if not 0.3 < sigma < 3.0:
        raise DomainError(f"sigma must lie in (0.3, 3), got {sigma}")
    if not 0.0 <= t_min < t_max <= 200.0:
        raise DomainError("need 0 <= t_min < t_max <= 200")
    if step is not None and not 0.0 < step <= 0.05:
        raise DomainError("step must be in (0, 0.05]")


def g_abs(sigma: float, t) -> np.ndarray:
    """|G(sigma + i t)| = |eta| |Gamma| on an array of t values."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.size)
    for i in range(0, t.size, _CHUNK):
        s = sigma + 1j * t[i:i + _CHUNK]
        e = eta_batch(s, DEFAULT_TOL)[0]
        out[i:i + _CHUNK] = np.abs(e) * np.exp(loggamma(s).real)
    return out


def _grid_minima(values: np.ndarray) -> list:
    """Indices of strict local minima; a flat run counts once, at its leftmost point."""
    starts = np.flatnonzero(np.r_[True, values[1:] != values[:-1]])
    run_vals = values[starts]
    found = []
    for j in range(1, len(starts) - 1):
        if run_vals[j] < run_vals[j - 1] and run_vals[j] < run_vals[j + 1]:
            found.append(int(starts[j]))
    return found


def _refine(sigma: float, t: np.ndarray, values: np.ndarray, i: int):
    # bracket by the neighbouring run endpoints so the bracket stays valid on plateaus
    lo = i - 1
    hi = i + 1
    while hi < len(values) - 1 and values[hi] == values[i]:
        hi += 1
    a, b, c = t[lo], t[i], t[hi]

    def f(x):
        return float(g_abs(sigma, x)[0])

    res = minimize_scalar(
        f, bracket=(a, b, c), method="golden",
        options={"xtol": _REFINE_DT / (2.0 * max(abs(b), 1.0))},
    )
    if res.fun <= values[i] and a <= res.x <= c:
        return float(res.x), float(res.fun)
    return float(b), float(values[i])


def scan_vhat(sigma: float, t_min: float, t_max: float, step: float = 0.01) -> ScanReport:
    """Evaluate |G(sigma + i t)| on a t grid, refine every local minimum, and report the floor."""
    _check_box(sigma, t_min, t_max, step)
    n = int(math.floor((t_max - t_min) / step + 1e-9))
    t = t_min + step * np.arange(n + 1)
    if t[-1] < t_max - 1e-12:
        t = np.append(t, t_max)
    values = g_abs(sigma, t)
    minima = [_refine(sigma, t, values, i) for i in _grid_minima(values)]
    candidates = [(float(t[k]), float(values[k])) for k in (int(np.argmin(values)),)] + minima
    gt, gv = min(candidates, key=lambda p: (p[1], p[0]))
    return ScanReport(
        sigma=float(sigma),
        t_min=float(t_min),
        t_max=float(t_max),
        step=float(step),
        global_min_value=gv,
        global_min_t=gt,
        local_minima=minima,
        positive_floor=gv,
    )


def zero_witness(sigma: float, t_guess: float):
    """Newton-polish from sigma + i t_guess; the zeta zero reached (Re in (0.3, 3)) or None."""
    _check_box(sigma, max(t_guess - 1.0, 0.0), max(t_guess, 1e-9))
    try:
        z = refine_zero(complex(sigma, t_guess))
    except (ConvergenceError, SingularityError, DomainError):
        return None
    if 0.3 < z.real < 3.0:
        return z
    return None


def route_gap(sigma: float, t: float) -> float:
    """| |G(sigma + i t)| - sqrt(2 pi) |v_hat(sigma, -t)| |, the scan's shortcut against quadrature."""
    return abs(abs(g_identity(complex(sigma, t)).value) - SQRT_2PI * abs(v_hat(sigma, -t).value))
