"""Hermite-function expansion of V_sigma and the Fourier transform in that basis.

Conventions follow the generating function

    sum_n phi_n(x) r**n / n! = exp(2 x r - r**2 - x**2 / 2),

so ``phi_n = H_n(x) exp(-x**2/2)`` with physicists' Hermite polynomials,
``||phi_n||**2 = 2**n n! sqrt(pi)`` and the unitary Fourier transform maps
``phi_n`` to ``(-i)**n phi_n``.  All internal work happens in the
orthonormal basis ``psi_n = phi_n / ||phi_n||``; the unnormalized functions
are only materialized on request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gfun import v_sigma

__all__ = [
    "HermiteCoeffs",
    "psi_table",
    "phi",
    "phi_orthonormal",
    "norm_sq",
    "log_norm_sq",
    "fourier_phi",
    "expand",
    "reconstruct",
    "reconstruct_hat",
    "bessel_partial_sums",
    "kernel_l2_sq",
]

_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)
_QUAD_STEP = 0.01
_MINUS_I_POW = np.array([1.0, -1j, -1.0, 1j])


def _psi_iter(nmax: int, x: np.ndarray):
    """Yield (sign, log|psi_n(x)|) for n = 0..nmax.

    Runs psi_n = x sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2} on scaled
    values with a per-point log scale, so neither the Gaussian factor nor the
    polynomial growth can under- or overflow.
    """
    x = np.asarray(x, dtype=float)
    logscale = -0.5 * x * x - 0.25 * math.log(math.pi)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    with np.errstate(divide="ignore"):
        yield np.sign(cur), np.log(np.abs(cur)) + logscale
        for n in range(1, nmax + 1):
            nxt = x * math.sqrt(2.0 / n) * cur - math.sqrt((n - 1) / n) * prev
            prev, cur = cur, nxt
            big = np.abs(cur) > _RESCALE
            if big.any():
                cur = np.where(big, cur / _RESCALE, cur)
                prev = np.where(big, prev / _RESCALE, prev)
                logscale = logscale + np.where(big, _LOG_RESCALE, 0.0)
            yield np.sign(cur), np.log(np.abs(cur)) + logscale


def psi_table(nmax: int, x) -> np.ndarray:
    """Orthonormal Hermite functions psi_0..psi_nmax at the points x, shape (nmax+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((nmax + 1, x.size))
    with np.errstate(under="ignore"):
        for n, (sgn, lg) in enumerate(_psi_iter(nmax, x)):
            out[n] = sgn * np.exp(lg)
    return out


def _check_order(n: int, limit: int):
    if n < 0 or n > limit:
        raise DomainError(f"order must be in [0, {limit}], got {n}")


def phi_orthonormal(n: int, x):
    """psi_n(x) = phi_n(x) / sqrt(2**n n! sqrt(pi)) for 0 <= n <= 5000."""
    _check_order(n, 5000)
    xa = np.asarray(x, dtype=float)
    for sgn, lg in _psi_iter(n, np.atleast_1d(xa)):
        pass
    with np.errstate(under="ignore"):
        val = sgn * np.exp(lg)
    return float(val[0]) if xa.ndim == 0 else val


def log_norm_sq(n: int) -> float:
    """log(2**n n! sqrt(pi))."""
    return n * math.log(2.0) + math.lgamma(n + 1) + 0.5 * math.log(math.pi)


def norm_sq(n: int) -> float:
    """||phi_n||**2 = 2**n n! sqrt(pi); overflows past n = 150."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n > 150:
        raise OverflowError(f"2**n n! sqrt(pi) overflows for n = {n}; use log_norm_sq")
    return float(2**n * math.factorial(n)) * math.sqrt(math.pi)


def phi(n: int, x):
    """phi_n(x) = H_n(x) exp(-x**2/2), 0 <= n <= 300.

    Raises OverflowError when the value exceeds the double range; use
    :func:`phi_orthonormal` for such arguments.
    """
    _check_order(n, 300)
    xa = np.asarray(x, dtype=float)
    for sgn, lg in _psi_iter(n, np.atleast_1d(xa)):
        pass
    lg = lg + 0.5 * log_norm_sq(n)
    if np.any(lg > 709.0):
        raise OverflowError(f"phi_{n} overflows at the requested points")
    with np.errstate(under="ignore"):
        val = sgn * np.exp(lg)
    return float(val[0]) if xa.ndim == 0 else val


def fourier_phi(n: int, t):
    """(-i)**n phi_n(t), the Fourier transform of phi_n."""
    return _MINUS_I_POW[n % 4] * phi(n, t)


@dataclass(frozen=True, eq=False)
class HermiteCoeffs:
    """Truncated expansion V_sigma ~ sum_{n<=order} coeffs[n] phi_n.

    ``coeffs[n] = <V_sigma, phi_n> / ||phi_n||**2``; ``ortho[n] = <V_sigma, psi_n>``
    holds the same expansion in the orthonormal basis.
    """

    sigma: float
    order: int
    coeffs: np.ndarray
    ortho: np.ndarray


def _coefficient_grid(sigma: float) -> np.ndarray:
    lo, hi = -60.0 / sigma, 10.0
    n = int(round((hi - lo) / _QUAD_STEP))
    return lo + _QUAD_STEP * np.arange(n + 1)


def expand(sigma: float, order: int = 120) -> HermiteCoeffs:
    """Hermite coefficients of V_sigma by trapezoid quadrature on [-60/sigma, 10]."""
    if not 0.3 <= sigma <= 3.0:
        raise DomainError(f"expand supports sigma in [0.3, 3], got {sigma}")
    if not 0 <= order <= 200:
        raise DomainError(f"expand supports order in [0, 200], got {order}")
    x = _coefficient_grid(sigma)
    v = v_sigma(sigma, x)
    w = np.full(x.size, _QUAD_STEP)
    w[0] = w[-1] = 0.5 * _QUAD_STEP
    table = psi_table(order, x)
    ortho = (table * (v * w)).sum(axis=1)
    scale = np.array([math.exp(-0.5 * log_norm_sq(n)) for n in range(order + 1)])
    coeffs = ortho * scale
    for arr in (ortho, coeffs):
        arr.setflags(write=False)
    return HermiteCoeffs(float(sigma), int(order), coeffs, ortho)


def reconstruct(hc: HermiteCoeffs, x):
    """Partial sum of the expansion at x (approximates V_sigma)."""
    xa = np.asarray(x, dtype=float)
    vals = hc.ortho @ psi_table(hc.order, np.atleast_1d(xa))
    return float(vals[0]) if xa.ndim == 0 else vals


def reconstruct_hat(hc: HermiteCoeffs, t):
    """Partial sum of the transformed expansion, sum c_n (-i)**n phi_n(t) (approximates v_hat)."""
    ta = np.asarray(t, dtype=float)
    phase = _MINUS_I_POW[np.arange(hc.order + 1) % 4]
    vals = (hc.ortho * phase) @ psi_table(hc.order, np.atleast_1d(ta))
    return complex(vals[0]) if ta.ndim == 0 else vals


def bessel_partial_sums(hc: HermiteCoeffs) -> np.ndarray:
    """Running sums of c_n**2 ||phi_n||**2 = <V_sigma, psi_n>**2 over n <= N."""
    return np.cumsum(hc.ortho**2)


def kernel_l2_sq(sigma: float) -> float:
    """int V_sigma(x)**2 dx on the coefficient quadrature grid."""
    x = _coefficient_grid(sigma)
    v = v_sigma(sigma, x)
    return float(_QUAD_STEP * (np.sum(v * v) - 0.5 * (v[0] ** 2 + v[-1] ** 2)))
