"""Zeta, the transform G(z) = eta(z) Gamma(z), Hermite expansions and the Newton flow for zeta zeros."""

from .errors import (
    ConvergenceError,
    DenominatorError,
    DomainError,
    NoConvergence,
    PoleError,
    SingularityError,
    ZetaflowError,
)
from .specfun import (
    FuncValue,
    Tolerance,
    eta,
    eta_prime,
    gamma,
    inverse_zeta_series,
    loggamma,
    mobius,
    sandwich_bounds,
    zeta,
    zeta_direct,
    zeta_prime,
)
from .gfun import QuadratureSpec, fourier_relation_residual, g_identity, g_integral, v_hat, v_sigma
from .hermite import HermiteCoeffs, expand, reconstruct, reconstruct_hat
from .flow import (
    BasinGrid,
    FlowConfig,
    Trajectory,
    basin_grid,
    escape_report,
    integrate,
    integrate_many,
    refine_zero,
    stability_eigen,
)
from .scan import ScanReport, scan_vhat, zero_witness

__version__ = "0.1.0"
