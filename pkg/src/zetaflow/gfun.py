"""The transform G(z) = int_0^inf u**(z-1) / (1 + e**u) du and its Fourier picture.

Two routes to G are provided:

* :func:`g_integral` - trapezoid quadrature of the substituted integral
  ``int_R e**(z x) / (1 + exp(e**x)) dx`` (u = e**x removes the u -> 0
  singularity and leaves an analytic integrand decaying like e**(sigma x)
  on the left and double-exponentially on the right);
* :func:`g_identity` - the closed form ``eta(z) * Gamma(z)``.

On a vertical line z = sigma + i t the substituted integral is a Fourier
transform of the real kernel ``V_sigma(x) = e**(sigma x) / (1 + exp(e**x))``,
so ``G(sigma + i t) = sqrt(2 pi) * v_hat(sigma, -t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import DEFAULT_TOL, EPS, FuncValue, Tolerance, eta, gamma

__all__ = [
    "QuadratureSpec",
    "default_quadrature",
    "v_sigma",
    "g_integral",
    "g_identity",
    "v_hat",
    "fourier_relation_residual",
    "density_normalizer",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)
T_CAP = 200.0

# e**x beyond this makes exp(-e**x) vanish in double precision
_DOUBLE_EXP_CUTOFF = 700.0


@dataclass(frozen=True)
class QuadratureSpec:
    lower_cutoff: float
    upper_cutoff: float
    step: float

    def __post_init__(self):
        if not (self.lower_cutoff < 0.0 < self.upper_cutoff):
            raise ValueError("need lower_cutoff < 0 < upper_cutoff")
        if not self.step > 0.0:
            raise ValueError("step must be positive")

    def nodes(self) -> np.ndarray:
        n = int(math.floor((self.upper_cutoff - self.lower_cutoff) / self.step + 1e-9))
        return self.lower_cutoff + self.step * np.arange(n + 1)


def default_quadrature(sigma: float, t: float = 0.0) -> QuadratureSpec:
    """Window [-(40/sigma + 20), 7.5]; the step resolves the oscillation e**(i t x)."""
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    return QuadratureSpec(-(40.0 / sigma + 20.0), 7.5, min(0.01, 0.3 / max(1.0, abs(t))))


def v_sigma(sigma: float, x):
    """Kernel e**(sigma x) / (1 + exp(e**x)), overflow safe; accepts arrays."""
    x = np.asarray(x, dtype=float)
    u = np.exp(np.minimum(x, 50.0))
    with np.errstate(under="ignore"):
        out = np.exp(sigma * x - np.logaddexp(0.0, u))
    out = np.where(u > _DOUBLE_EXP_CUTOFF, 0.0, out)
    return float(out) if out.ndim == 0 else out


def _trapezoid_transform(sigma: float, omega: float, qs: QuadratureSpec):
    """int e**(i omega x) V_sigma(x) dx on the window, with error estimate.

    Returns (value, abs_err).  The error combines the two neglected tails
    with |T_h - T_2h|, which overestimates the error of T_h for an
    analytic integrand.
    """
    x = qs.nodes()
    f = v_sigma(sigma, x) * np.exp(1j * omega * x)
    h = qs.step
    # endpoint values are below double-precision relevance; use plain trapezoid anyway
    th = h * (f.sum() - 0.5 * (f[0] + f[-1]))
    f2 = f[::2]
    t2h = 2.0 * h * (f2.sum() - 0.5 * (f2[0] + f2[-1]))
    a, b = qs.lower_cutoff, qs.upper_cutoff
    left_tail = math.exp(sigma * a) / (2.0 * sigma)
    eb = math.exp(b)
    if eb > _DOUBLE_EXP_CUTOFF:
        right_tail = 0.0
    else:
        # int_b^inf e**(sigma x) exp(-e**x) dx <= e**(sigma b) exp(-e**b) / (e**b - sigma)
        right_tail = math.exp(sigma * b - eb) / max(eb - sigma, 1e-300)
    # each phase omega * x carries a relative error of about EPS |omega x|
    roundoff = EPS * h * (np.abs(f) * (8.0 + np.abs(omega * x))).sum()
    err = abs(th - t2h) + left_tail + right_tail + roundoff
    return complex(th), float(err), len(x)


def g_integral(z, qs: QuadratureSpec | None = None) -> FuncValue:
    """G(z) by trapezoid quadrature on the x-line (u = e**x)."""
    z = complex(z)
    if not z.real > 0.0:
        raise DomainError(f"g_integral requires Re z > 0, got {z!r}")
    if qs is None:
        qs = default_quadrature(z.real, z.imag)
    val, err, n = _trapezoid_transform(z.real, z.imag, qs)
    return FuncValue(val, err, n)


def g_identity(z, tol: Tolerance = DEFAULT_TOL) -> FuncValue:
    """G(z) = eta(z) * Gamma(z); regular at z = 1 and where 2**(1-z) = 1."""
    z = complex(z)
    if not z.real > 0.0:
        raise DomainError(f"g_identity requires Re z > 0, got {z!r}")
    e = eta(z, tol)
    g = gamma(z)
    val = e.value * g.value
    err = e.abs_err * abs(g.value) + abs(e.value) * g.abs_err + e.abs_err * g.abs_err
    return FuncValue(val, err, e.terms_used + g.terms_used)


def v_hat(sigma: float, t: float, qs: QuadratureSpec | None = None) -> FuncValue:
    """Fourier transform (2 pi)**-1/2 int e**(-i t x) V_sigma(x) dx."""
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    if abs(t) > T_CAP:
        raise DomainError(f"|t| <= {T_CAP:g} supported, got {t!r}")
    if qs is None:
        qs = default_quadrature(sigma, t)
    val, err, n = _trapezoid_transform(sigma, -t, qs)
    return FuncValue(val / SQRT_2PI, err / SQRT_2PI, n)


def fourier_relation_residual(sigma: float, t: float) -> float:
    """|G(sigma + i t) - sqrt(2 pi) v_hat(sigma, -t)|, closed form against quadrature."""
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    lhs = g_identity(complex(sigma, t)).value
    rhs = SQRT_2PI * v_hat(sigma, -t).value
    return abs(lhs - rhs)


def density_normalizer(sigma: float) -> float:
    """G(sigma) = eta(sigma) Gamma(sigma) = int V_sigma, the mass of V_sigma."""
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    return g_identity(complex(sigma, 0.0)).value.real
