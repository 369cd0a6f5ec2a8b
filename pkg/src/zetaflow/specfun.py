"""Riemann zeta, Dirichlet eta, Gamma and related series on Re z > 0.

Zeta is obtained from the alternating (eta) series through

    zeta(z) = eta(z) / (1 - 2**(1 - z)),

and eta itself is summed with the Chebyshev-weighted acceleration of
Borwein / Cohen-Villegas-Zagier, whose truncation error after ``n`` terms is
at most ``2 * Gamma(sigma) / |Gamma(z)| / (3 + sqrt 8)**n``.

Every scalar routine returns a :class:`FuncValue` carrying an a priori error
bound.  The ``*_batch`` helpers evaluate many points at once and are what the
flow integrator and the scanner use internally.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DenominatorError, DomainError, PoleError

__all__ = [
    "Tolerance",
    "FuncValue",
    "SandwichBounds",
    "DEFAULT_TOL",
    "eta",
    "eta_prime",
    "zeta",
    "zeta_prime",
    "gamma",
    "loggamma",
    "zeta_direct",
    "mobius",
    "inverse_zeta_series",
    "sandwich_bounds",
    "eta_batch",
    "zeta_batch",
]

EPS = float(np.finfo(float).eps)
LN2 = math.log(2.0)
_RHO = 3.0 + math.sqrt(8.0)
_LN_RHO = math.log(_RHO)
_POLE_RADIUS = 1e-6
_DENOM_PERIOD = 2.0 * math.pi / LN2


@dataclass(frozen=True)
class Tolerance:
    """Accuracy request for series evaluations."""

    target_abs_err: float = 1e-15
    max_terms: int = 2000

    def __post_init__(self):
        if not self.target_abs_err >= 1e-15:
            raise ValueError("target_abs_err must be >= 1e-15 (double precision floor)")
        if self.max_terms < 1:
            raise ValueError("max_terms must be a positive integer")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class FuncValue:
    """A computed value together with its estimated absolute error."""

    value: complex
    abs_err: float
    terms_used: int

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ConvergenceError(f"non-finite result {v!r}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class SandwichBounds:
    lower: float
    upper: float
    value_abs: float
    holds: bool


# ---------------------------------------------------------------------------
# Gamma (Lanczos, g = 7, 9 coefficients)

_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _loggamma_right(z):
    # valid for Re z >= 1/2
    z = z - 1.0
    x = np.full(z.shape, _LANCZOS_COEF[0], dtype=complex)
    for i in range(1, len(_LANCZOS_COEF)):
        x = x + _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def loggamma(z):
    """Logarithm of Gamma for complex arrays (not necessarily the principal branch).

    ``exp(loggamma(z))`` is Gamma(z) and ``loggamma(z).real`` is log|Gamma(z)|;
    the imaginary part may differ from the principal log-gamma by a
    multiple of 2*pi.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    out[right] = _loggamma_right(z[right])
    left = ~right
    if left.any():
        zl = z[left]
        out[left] = math.log(math.pi) - np.log(np.sin(np.pi * zl)) - _loggamma_right(1.0 - zl)
    return out[0] if scalar else out


def gamma(z) -> FuncValue:
    """Gamma(z) by the Lanczos approximation, with reflection for Re z < 1/2."""
    z = complex(z)
    k = round(z.real)
    if k <= 0 and abs(z - k) < 1e-9:
        raise PoleError(f"Gamma has a pole at {k}")
    lg = complex(loggamma(z))
    value = cmath.exp(lg)
    # Lanczos relative accuracy plus the loss from exponentiating a large log
    rel = 2e-15 + 16.0 * EPS * (abs(lg) + 1.0)
    return FuncValue(value, rel * abs(value), len(_LANCZOS_COEF))


# ---------------------------------------------------------------------------
# Accelerated alternating series


@lru_cache(maxsize=128)
def _signed_weights(n: int) -> np.ndarray:
    """Weights s_k with eta(z) ~ sum_k s_k (k+1)**-z, k = 0..n-1.

    s_k = (-1)**k (d_n - d_k) / d_n where
    d_k = n * sum_{i<=k} (n+i-1)! 4**i / ((n-i)! (2i)!).
    The d_k are computed exactly; only the final ratios are rounded.
    """
    partial = []
    term = Fraction(1)  # i = 0 term: n * (n-1)! / n! = 1
    acc = term
    partial.append(acc)
    for i in range(1, n + 1):
        term = term * (4 * (n + i - 1) * (n - i + 1)) / ((2 * i) * (2 * i - 1))
        acc += term
        partial.append(acc)
    dn = partial[n]
    w = np.array([float((dn - partial[k]) / dn) for k in range(n)])
    w[1::2] *= -1.0
    w.setflags(write=False)
    return w


@lru_cache(maxsize=128)
def _log_table(n: int) -> np.ndarray:
    lk = np.log(np.arange(1, n + 1, dtype=float))
    lk.setflags(write=False)
    return lk


def _log_gamma_ratio(s: np.ndarray) -> np.ndarray:
    """log(Gamma(sigma) / |Gamma(s)|), the growth factor in the eta error bound."""
    return loggamma(s.real.astype(complex)).real - loggamma(s).real


def _worst_log_ratios(s: np.ndarray, derivative: bool):
    """Batch-wide upper bounds for the eta truncation growth factor.

    Gamma(sigma) / |Gamma(sigma + i t)| = prod_n (1 + t**2 / (sigma + n)**2)**(1/2)
    grows with |t| and shrinks with sigma, so the corner (min sigma, max |t|)
    bounds every point of the batch.  For the derivative the same corner
    argument covers the Cauchy circle of radius r around each point.
    Returns (log_ratio, log_ratio_on_circle, r); the last two are None
    unless ``derivative`` is set.
    """
    sig = float(s.real.min())
    tmax = float(np.abs(s.imag).max())
    pts = [complex(sig, tmax)]
    r = min(0.5 * sig, 0.5)
    if derivative:
        pts.append(complex(sig - r, tmax + r))
    lr = _log_gamma_ratio(np.array(pts))
    if derivative:
        return float(lr[0]), float(lr[1]), r
    return float(lr[0]), None, None


def _term_count(need: float, tol: Tolerance) -> int:
    n = max(int(math.ceil(need)), 2)
    if n > tol.max_terms:
        raise ConvergenceError(
            f"eta acceleration needs {n} terms for target {tol.target_abs_err:g}; "
            f"max_terms={tol.max_terms}"
        )
    return n


def eta_batch(s, tol: Tolerance = DEFAULT_TOL, derivative: bool = False):
    """Vectorized eta (and optionally eta') on an array of points with Re s > 0.

    Returns ``(eta, eta_err, deta, deta_err, n)``; the derivative entries are
    ``None`` unless requested.  A single term count ``n`` (the largest any
    point needs) is used for the whole batch.  The derivative's truncation
    bound comes from the Cauchy estimate of the eta bound on a circle.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(s.real <= 0.0):
        raise DomainError("eta requires Re z > 0")
    log_target = math.log(tol.target_abs_err)
    lr, lrc, r = _worst_log_ratios(s, derivative)
    need = (math.log(2.0) + lr - log_target) / _LN_RHO
    if derivative:
        need = max(need, (math.log(2.0) + lrc - math.log(r) - log_target) / _LN_RHO)
    n = _term_count(need, tol)
    w = _signed_weights(n)
    lk = _log_table(n)
    mag = np.exp(np.multiply.outer(-s.real, lk))  # |k**-s|
    phase = np.multiply.outer(s.imag, lk)
    terms = (mag * w) * (np.cos(phase) - 1j * np.sin(phase))
    val = terms.sum(axis=1)
    round_scale = (8.0 + math.log2(n)) * EPS
    mag *= np.abs(w)
    err = 2.0 * math.exp(lr - n * _LN_RHO) + round_scale * mag.sum(axis=1)
    if not derivative:
        return val, err, None, None, n
    dval = -(terms * lk).sum(axis=1)
    derr = 2.0 * math.exp(lrc - n * _LN_RHO) / r + round_scale * (mag * lk).sum(axis=1)
    return val, err, dval, derr, n


def _one_minus_pow2(s):
    p = np.exp((1.0 - s) * LN2)
    return 1.0 - p, p


def zeta_batch(s, tol: Tolerance = DEFAULT_TOL, derivative: bool = False):
    """Vectorized zeta (and optionally zeta') for Re s > 0, away from poles.

    No pole or denominator checks are made; points there give huge or
    non-finite output which callers must screen.  Returns
    ``(zeta, zeta_err, dzeta, dzeta_err, n)``.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    e, e_err, de, de_err, n = eta_batch(s, tol, derivative)
    c, p = _one_minus_pow2(s)
    ac = np.abs(c)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = e / c
        c_err = 2.0 * EPS * np.abs(p)
        z_err = e_err / ac + np.abs(z) * c_err / ac
        if not derivative:
            return z, z_err, None, None, n
        dc = p * LN2
        dz = (de - dc * z) / c
        dz_err = (de_err + np.abs(dc) * z_err) / ac + np.abs(dz) * c_err / ac
    return z, z_err, dz, dz_err, n


def _check_right_half(z: complex, name: str):
    if not z.real > 0.0:
        raise DomainError(f"{name} requires Re z > 0, got {z!r}")


def _check_zeta_domain(z: complex):
    _check_right_half(z, "zeta")
    if abs(z - 1.0) < _POLE_RADIUS:
        raise PoleError("zeta has a pole at z = 1")
    k = round(z.imag / _DENOM_PERIOD)
    if k != 0 and abs(z - complex(1.0, k * _DENOM_PERIOD)) < _POLE_RADIUS:
        raise DenominatorError(f"1 - 2**(1-z) vanishes at 1 + {k}*2*pi*i/ln 2")


def eta(z, tol: Tolerance = DEFAULT_TOL) -> FuncValue:
    """Dirichlet eta, sum of (-1)**(n+1) n**-z, for Re z > 0."""
    z = complex(z)
    _check_right_half(z, "eta")
    v, err, _, _, n = eta_batch(np.array([z]), tol)
    return FuncValue(v[0], float(err[0]), n)


def eta_prime(z, tol: Tolerance = DEFAULT_TOL) -> FuncValue:
    """Derivative of eta, sum of (-1)**n ln(n) n**-z."""
    z = complex(z)
    _check_right_half(z, "eta")
    _, _, dv, derr, n = eta_batch(np.array([z]), tol, derivative=True)
    return FuncValue(dv[0], float(derr[0]), n)


def zeta(z, tol: Tolerance = DEFAULT_TOL) -> FuncValue:
    """Riemann zeta on Re z > 0 as eta(z) / (1 - 2**(1-z))."""
    z = complex(z)
    _check_zeta_domain(z)
    v, err, _, _, n = zeta_batch(np.array([z]), tol)
    return FuncValue(v[0], float(err[0]), n)


def zeta_prime(z, tol: Tolerance = DEFAULT_TOL) -> FuncValue:
    """zeta'(z) = (eta'(z) - c'(z) zeta(z)) / c(z), with c(z) = 1 - 2**(1-z)."""
    z = complex(z)
    _check_zeta_domain(z)
    _, _, dv, derr, n = zeta_batch(np.array([z]), tol, derivative=True)
    return FuncValue(dv[0], float(derr[0]), n)


def zeta_direct(z, n_terms: int) -> FuncValue:
    """Plain partial sum of n**-z for n <= n_terms, valid for Re z > 1.

    The error bound is the integral tail N**(1-sigma) / (sigma - 1) plus a
    summation roundoff allowance.  Meant as an independent check on
    :func:`zeta`, so it shares no code with the accelerated series.
    """
    z = complex(z)
    if not z.real > 1.0:
        raise DomainError(f"zeta_direct requires Re z > 1, got {z!r}")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    total = 0j
    absum = 0.0
    chunk = 1 << 20
    for start in range(1, n_terms + 1, chunk):
        k = np.arange(start, min(start + chunk, n_terms + 1), dtype=float)
        lk = np.log(k)
        total += np.exp(-z * lk).sum()
        absum += np.exp(-z.real * lk).sum()
    sigma = z.real
    tail = n_terms ** (1.0 - sigma) / (sigma - 1.0)
    err = tail + (8.0 + math.log2(n_terms + 1)) * EPS * absum
    return FuncValue(total, err, n_terms)


# ---------------------------------------------------------------------------
# Moebius function and the reciprocal series


_MU_CACHE: np.ndarray = np.array([0, 1], dtype=np.int8)


def mobius(n: int) -> np.ndarray:
    """Array ``mu`` with ``mu[k]`` the Moebius function of k for 0 <= k <= n (``mu[0] = 0``).

    Linear sieve: each composite is struck exactly once, by its least prime factor.
    """
    global _MU_CACHE
    if n < len(_MU_CACHE):
        return _MU_CACHE[: n + 1].copy()
    mu = [0] * (n + 1)
    mu[1] = 1
    is_comp = bytearray(n + 1)
    primes = []
    for i in range(2, n + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > n:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    _MU_CACHE = np.array(mu, dtype=np.int8)
    return _MU_CACHE.copy()


def inverse_zeta_series(z, n_terms: int) -> FuncValue:
    """Partial sum of mu(n) n**-z (-> 1/zeta(z)) for Re z > 1."""
    z = complex(z)
    if not z.real > 1.0:
        raise DomainError(f"inverse_zeta_series requires Re z > 1, got {z!r}")
    mu = mobius(n_terms)[1:].astype(float)
    lk = np.log(np.arange(1, n_terms + 1, dtype=float))
    val = (mu * np.exp(-z * lk)).sum()
    absum = (np.abs(mu) * np.exp(-z.real * lk)).sum()
    tail = n_terms ** (1.0 - z.real) / (z.real - 1.0)
    err = tail + (8.0 + math.log2(n_terms + 1)) * EPS * absum
    return FuncValue(val, err, n_terms)


def sandwich_bounds(z, tol: Tolerance = DEFAULT_TOL) -> SandwichBounds:
    """The bounds (sigma-1)/sigma < |zeta(z)| < sigma/(sigma-1) for sigma = Re z > 1."""
    z = complex(z)
    sigma = z.real
    if not sigma > 1.0 + 1e-9:
        raise DomainError(f"sandwich_bounds requires Re z > 1, got {z!r}")
    lower = (sigma - 1.0) / sigma
    upper = sigma / (sigma - 1.0)
    value_abs = abs(zeta(z, tol).value)
    return SandwichBounds(lower, upper, value_abs, lower < value_abs < upper)
