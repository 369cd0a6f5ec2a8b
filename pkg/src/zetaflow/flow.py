"""Continuous Newton flow dz/dt = -zeta(z) / zeta'(z).

Along any solution ``zeta(z(t)) = exp(-t) zeta(z(0))``, so trajectories are
driven toward zeros of zeta, each simple zero being an attracting node
with linearization eigenvalue -1.  This module integrates the flow with an
embedded Dormand-Prince 5(4) pair, classifies where trajectories end up,
polishes limits with discrete Newton steps and maps basins of attraction.

The integrator is vectorized: a batch of starting points advances in
lockstep, each with its own time and step size.  Single trajectories are
batches of one.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NoConvergence, SingularityError
from .specfun import Tolerance, zeta_batch

__all__ = [
    "FlowConfig",
    "BASIN_CONFIG",
    "ConvergedToZero",
    "Escaped",
    "DerivativeSingularity",
    "MaxTimeReached",
    "Trajectory",
    "BasinGrid",
    "EscapeReport",
    "phi_rhs",
    "integrate",
    "integrate_many",
    "refine_zero",
    "stability_eigen",
    "basin_grid",
    "escape_report",
    "worker_count",
]

# trajectories entering Re z <= RE_GUARD leave the validated domain
RE_GUARD = 0.02
REFINE_TARGET = 1e-13
REFINE_MAX_ITER = 50
REGISTRY_SEPARATION = 1e-6

LABEL_ESCAPED = -1
LABEL_SINGULARITY = -2
LABEL_TIMEOUT = -3

_TOL = Tolerance(1e-15, 20000)
_CHUNK = 250
_MIN_STEP = 1e-9
_MAX_ATTEMPTS = 100_000

# Dormand-Prince 5(4) tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


@dataclass(frozen=True)
class FlowConfig:
    rel_tol: float = 1e-9
    t_max: float = 60.0
    conv_eps: float = 1e-12
    deriv_eps: float = 1e-10
    escape_im: float = 1e4
    sample_dt: float = 0.1

    def __post_init__(self):
        for name in ("rel_tol", "t_max", "conv_eps", "deriv_eps", "escape_im", "sample_dt"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.conv_eps < 1:
            raise ValueError("conv_eps must be < 1")
        if not self.sample_dt <= self.t_max:
            raise ValueError("sample_dt must not exceed t_max")


# Basin labels only need the limit zero, which polishing pins down exactly;
# a looser integration budget identifies it at a fraction of the cost.
BASIN_CONFIG = FlowConfig(rel_tol=1e-6, conv_eps=1e-8)


@dataclass(frozen=True)
class ConvergedToZero:
    alpha: complex
    kind = "converged"
    label_code = None

    @property
    def point(self) -> complex:
        return self.alpha


@dataclass(frozen=True)
class Escaped:
    last: complex
    kind = "escaped"
    label_code = LABEL_ESCAPED

    @property
    def point(self) -> complex:
        return self.last


@dataclass(frozen=True)
class DerivativeSingularity:
    at: complex
    kind = "singularity"
    label_code = LABEL_SINGULARITY

    @property
    def point(self) -> complex:
        return self.at


@dataclass(frozen=True)
class MaxTimeReached:
    last: complex
    kind = "timeout"
    label_code = LABEL_TIMEOUT

    @property
    def point(self) -> complex:
        return self.last


Outcome = ConvergedToZero | Escaped | DerivativeSingularity | MaxTimeReached


@dataclass
class Trajectory:
    start: complex
    samples: list = field(default_factory=list)  # (t, z, |zeta(z)|)
    outcome: Outcome | None = None
    decay_residual_max: float = 0.0
    steps: int = 0

    @property
    def t_end(self) -> float:
        return self.samples[-1][0] if self.samples else 0.0


@dataclass(frozen=True)
class EscapeReport:
    max_re: float
    limsup_proxy_re: float
    min_zeta_abs: float


@dataclass(frozen=True, eq=False)
class BasinGrid:
    rect: tuple
    nx: int
    ny: int
    labels: np.ndarray  # shape (nx, ny), labels[ix, iy]
    zeros_registry: list

    def cell_center(self, ix: int, iy: int) -> complex:
        re_min, re_max, im_min, im_max = self.rect
        return complex(
            re_min + (ix + 0.5) * (re_max - re_min) / self.nx,
            im_min + (iy + 0.5) * (im_max - im_min) / self.ny,
        )


def worker_count(workers: int | None = None) -> int:
    """Worker threads to use: explicit argument, else ZETAFLOW_THREADS, else CPU count."""
    if workers is not None:
        if workers < 1:
            raise ValueError("workers must be positive")
        return workers
    env = os.environ.get("ZETAFLOW_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("ZETAFLOW_THREADS must be a positive integer")
        return n
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Vector field


def _field_full(z: np.ndarray, deriv_eps: float):
    """Return (phi, phi_err, zeta, bad); bad marks |zeta'| < deriv_eps or non-finite values."""
    zt, zt_err, dz, dz_err, _ = zeta_batch(z, _TOL, derivative=True)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        f = -zt / dz
        adz = np.abs(dz)
        f_err = zt_err / adz + np.abs(zt) * dz_err / adz**2
    bad = ~(adz >= deriv_eps) | ~np.isfinite(f) | ~np.isfinite(zt)
    return f, f_err, zt, bad


def _field(z: np.ndarray, deriv_eps: float):
    f, _, zt, bad = _field_full(z, deriv_eps)
    return f, zt, bad


def phi_rhs(z, cfg: FlowConfig | None = None) -> complex:
    """Newton vector field -zeta(z)/zeta'(z)."""
    cfg = cfg or FlowConfig()
    z = complex(z)
    if not z.real > 0:
        raise DomainError(f"phi_rhs requires Re z > 0, got {z!r}")
    zt, _, dz, _, _ = zeta_batch(np.array([z]), _TOL, derivative=True)
    if not abs(dz[0]) >= cfg.deriv_eps:
        raise SingularityError(f"|zeta'(z)| < {cfg.deriv_eps:g} at {z!r}")
    return complex(-zt[0] / dz[0])


# ---------------------------------------------------------------------------
# Newton polishing


def _polish(z: np.ndarray, deriv_eps: float):
    """Vectorized discrete Newton; returns (z, ok, singular)."""
    z = np.array(z, dtype=complex)
    ok = np.zeros(z.shape, dtype=bool)
    singular = np.zeros(z.shape, dtype=bool)
    live = np.ones(z.shape, dtype=bool)
    for _ in range(REFINE_MAX_ITER + 1):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        zi = z[idx]
        inside = zi.real > 0
        live[idx[~inside]] = False
        idx, zi = idx[inside], zi[inside]
        if idx.size == 0:
            break
        zt, _, dz, _, _ = zeta_batch(zi, _TOL, derivative=True)
        done = np.abs(zt) < REFINE_TARGET
        ok[idx[done]] = True
        live[idx[done]] = False
        sing = ~done & ~(np.abs(dz) >= deriv_eps)
        singular[idx[sing]] = True
        live[idx[sing]] = False
        step = ~done & ~sing
        z[idx[step]] = zi[step] - zt[step] / dz[step]
    return z, ok, singular


def refine_zero(z_guess, deriv_eps: float = 1e-10) -> complex:
    """Polish a zero of zeta by Newton steps until |zeta| < 1e-13 (at most 50 steps)."""
    z_guess = complex(z_guess)
    z, ok, singular = _polish(np.array([z_guess]), deriv_eps)
    if singular[0]:
        raise SingularityError(f"|zeta'| < {deriv_eps:g} during Newton polish from {z_guess!r}")
    if not ok[0]:
        raise NoConvergence(f"Newton polish from {z_guess!r} did not reach |zeta| < {REFINE_TARGET:g}")
    return complex(z[0])


def stability_eigen(alpha, h: float = 1e-6, cfg: FlowConfig | None = None) -> complex:
    """phi'(alpha) by centered differences along 1 and i, averaged."""
    alpha = complex(alpha)
    pts = np.array([alpha + h, alpha - h, alpha + 1j * h, alpha - 1j * h])
    deriv_eps = (cfg or FlowConfig()).deriv_eps
    f, _, bad = _field(pts, deriv_eps)
    if bad.any():
        raise SingularityError(f"vector field singular near {alpha!r}")
    d_re = (f[0] - f[1]) / (2 * h)
    d_im = (f[2] - f[3]) / (2j * h)
    return complex(0.5 * (d_re + d_im))


# ---------------------------------------------------------------------------
# Integration


_RUNNING, _CONVERGED, _ESCAPED, _SINGULAR, _TIMEOUT = range(5)


def _integrate_batch(z0: np.ndarray, cfg: FlowConfig, record: bool):
    """Advance every start in z0 until it terminates.

    Returns (status, z_end, steps, samples) where samples is a list of
    per-start lists of (t, z, |zeta|) when record is set, else None.
    """
    m = z0.size
    z = z0.astype(complex).copy()
    t = np.zeros(m)
    h = np.full(m, min(0.05, cfg.sample_dt))
    err_prev = np.full(m, 1e-4)
    status = np.full(m, _RUNNING)
    steps = np.zeros(m, dtype=int)
    samples = [[] for _ in range(m)] if record else None
    next_k = np.ones(m, dtype=np.int64)  # index of next sample time k * sample_dt

    # initial screening and first evaluation
    guard = (z.real <= RE_GUARD) | (np.abs(z.imag) > cfg.escape_im)
    status[guard] = _ESCAPED
    live = np.flatnonzero(~guard)
    k1 = np.zeros(m, dtype=complex)
    k1_err = np.zeros(m)
    attempts = np.zeros(m, dtype=np.int64)
    zeta_now = np.full(m, np.nan, dtype=complex)
    if live.size:
        f, fe, zt, bad = _field_full(z[live], cfg.deriv_eps)
        k1[live], k1_err[live], zeta_now[live] = f, fe, zt
        status[live[bad]] = _SINGULAR
    zeta0_abs = np.abs(zeta_now)
    thresh = cfg.conv_eps * np.maximum(1.0, np.where(np.isfinite(zeta0_abs), zeta0_abs, 1.0))
    if record:
        for i in range(m):
            if np.isfinite(zeta0_abs[i]):
                samples[i].append((0.0, complex(z[i]), float(zeta0_abs[i])))
    hit = (status == _RUNNING) & (zeta0_abs < thresh)
    status[hit] = _CONVERGED

    while True:
        idx = np.flatnonzero(status == _RUNNING)
        if idx.size == 0:
            break
        zi, ti, hi = z[idx], t[idx], h[idx]
        h_eff = np.minimum(hi, cfg.t_max - ti)
        if record:
            t_next = next_k[idx] * cfg.sample_dt
            h_eff = np.minimum(h_eff, t_next - ti)
        # a stage outside the guard, or where zeta' is too small, rejects the step
        attempts[idx] += 1
        ks = [k1[idx]]
        noise = k1_err[idx].copy()
        dom_rej = np.zeros(idx.size, dtype=bool)
        sing_rej = np.zeros(idx.size, dtype=bool)
        zeta_new = None
        for s in range(1, 7):
            zs = zi + h_eff * sum(a * k for a, k in zip(_A[s], ks) if a != 0.0)
            dom_rej |= (zs.real <= RE_GUARD) | ~np.isfinite(zs)
            fs = np.zeros(idx.size, dtype=complex)
            zts = np.full(idx.size, np.nan, dtype=complex)
            ev = np.flatnonzero(~(dom_rej | sing_rej))
            if ev.size:
                f, fe, zt, bad = _field_full(zs[ev], cfg.deriv_eps)
                fs[ev] = np.where(bad, 0.0, f)
                zts[ev] = zt
                noise[ev] = np.maximum(noise[ev], np.where(bad, 0.0, fe))
                fe_last = np.zeros(idx.size)
                fe_last[ev] = np.where(bad, 0.0, fe)
                sing_rej[ev[bad]] = True
            ks.append(fs)
            zeta_new = zts
        z_new = zi + h_eff * sum(a * k for a, k in zip(_A[6], ks[:6]) if a != 0.0)
        err_vec = h_eff * sum(e * k for e, k in zip(_E, ks) if e != 0.0)
        # error relative to the increment (uniform relative accuracy in log zeta,
        # so the approach to a zero stays geometric), floored at the roundoff
        # level of the vector field itself
        scale = cfg.rel_tol * np.abs(z_new - zi) / h_eff + h_eff * noise + 1e-300
        err = np.abs(err_vec) / scale

        rej = dom_rej | sing_rej
        ri = idx[rej]
        h[ri] = 0.25 * h_eff[rej]
        collapsed = h[ri] < _MIN_STEP
        status[ri[collapsed & dom_rej[rej]]] = _ESCAPED
        status[ri[collapsed & ~dom_rej[rej]]] = _SINGULAR

        ok = ~rej
        good = ok & (err <= 1.0)
        bad_err = ok & ~good
        # PI step controller (Hairer-Wanner constants for order 5)
        e_g = np.maximum(err[good], 1e-10)
        fac = 0.9 * e_g ** (-0.7 / 5) * err_prev[idx[good]] ** (0.4 / 5)
        fac = np.clip(fac, 0.2, 5.0)
        gi = idx[good]
        clipped = h_eff[good] < hi[good]
        h[gi] = np.where(clipped, np.maximum(hi[good], h_eff[good] * fac), h_eff[good] * fac)
        err_prev[gi] = e_g
        z[gi] = z_new[good]
        t[gi] = ti[good] + h_eff[good]
        k1[gi] = ks[6][good]
        k1_err[gi] = fe_last[good]
        zeta_now[gi] = zeta_new[good]
        steps[gi] += 1

        bi = idx[bad_err]
        fac_r = np.maximum(0.2, 0.9 * np.maximum(err[bad_err], 1e-10) ** (-0.2))
        fac_r = np.where(np.isfinite(fac_r), fac_r, 0.2)
        h[bi] = h_eff[bad_err] * fac_r
        # step collapse from accuracy failures only happens next to zeta' = 0
        tiny = h[bi] < _MIN_STEP
        status[bi[tiny]] = _SINGULAR

        # bookkeeping on accepted steps
        if gi.size:
            za = np.abs(zeta_now[gi])
            conv = za < thresh[gi]
            status[gi[conv]] = _CONVERGED
            rest = ~conv
            esc = rest & ((np.abs(z[gi].imag) > cfg.escape_im) | (z[gi].real <= RE_GUARD))
            status[gi[esc]] = _ESCAPED
            tout = rest & ~esc & (t[gi] >= cfg.t_max * (1 - 1e-15))
            status[gi[tout]] = _TIMEOUT
            if record:
                # keep the sample_dt grid points plus the terminal state
                for j, i in enumerate(gi):
                    on_grid = abs(t[i] - next_k[i] * cfg.sample_dt) <= 1e-12 * max(1.0, t[i])
                    if on_grid:
                        next_k[i] += 1
                    if on_grid or status[i] != _RUNNING:
                        samples[i].append((float(t[i]), complex(z[i]), float(za[j])))
        stuck = idx[(status[idx] == _RUNNING) & (attempts[idx] >= _MAX_ATTEMPTS)]
        status[stuck] = _TIMEOUT
    if record:
        # terminations decided on a rejected step still end on the last accepted state
        for i in range(m):
            if samples[i] and samples[i][-1][0] < t[i]:
                samples[i].append((float(t[i]), complex(z[i]), float(abs(zeta_now[i]))))
    return status, z, steps, samples


def _finish(z0: np.ndarray, status, z_end, cfg: FlowConfig):
    """Polish converged endpoints and build outcome objects."""
    outcomes = [None] * z0.size
    conv = np.flatnonzero(status == _CONVERGED)
    if conv.size:
        zp, ok, _ = _polish(z_end[conv], cfg.deriv_eps)
        for j, i in enumerate(conv):
            zi = complex(zp[j]) if ok[j] else complex(z_end[i])
            outcomes[i] = ConvergedToZero(zi)
    for i in range(z0.size):
        if outcomes[i] is not None:
            continue
        p = complex(z_end[i])
        outcomes[i] = {
            _ESCAPED: Escaped,
            _SINGULAR: DerivativeSingularity,
            _TIMEOUT: MaxTimeReached,
        }[int(status[i])](p)
    return outcomes


def integrate_many(z0s, cfg: FlowConfig | None = None, record: bool = True) -> list:
    """Integrate several starts as one batch; returns a list of Trajectory."""
    cfg = cfg or FlowConfig()
    z0 = np.atleast_1d(np.asarray(z0s, dtype=complex))
    if np.any(z0.real <= 0):
        raise DomainError("starting points need Re z > 0")
    status, z_end, steps, samples = _integrate_batch(z0, cfg, record)
    outcomes = _finish(z0, status, z_end, cfg)
    out = []
    for i in range(z0.size):
        smp = samples[i] if record else []
        tr = Trajectory(complex(z0[i]), smp, outcomes[i], 0.0, int(steps[i]))
        if smp and smp[0][2] > 0:
            a0 = smp[0][2]
            tr.decay_residual_max = max(abs(za - math.exp(-ts) * a0) / a0 for ts, _, za in smp)
        out.append(tr)
    return out


def integrate(z0, cfg: FlowConfig | None = None) -> Trajectory:
    """Follow the Newton flow from z0 until it converges, escapes, hits a singularity or times out."""
    return integrate_many([complex(z0)], cfg, record=True)[0]


def escape_report(traj: Trajectory) -> EscapeReport:
    """Instrument a trajectory: max Re z, max Re z over the final quarter, min |zeta|."""
    if not traj.samples:
        return EscapeReport(traj.start.real, traj.start.real, math.nan)
    res = np.array([s[1].real for s in traj.samples])
    zab = np.array([s[2] for s in traj.samples])
    tail = res[int(math.floor(0.75 * len(res))):]
    return EscapeReport(float(res.max()), float(tail.max()), float(zab.min()))


# ---------------------------------------------------------------------------
# Basins


def _run_chunk(points: np.ndarray, cfg: FlowConfig):
    status, z_end, _, _ = _integrate_batch(points, cfg, record=False)
    outcomes = _finish(points, status, z_end, cfg)
    return outcomes


def basin_grid(rect, nx: int, ny: int, cfg: FlowConfig | None = None,
               workers: int | None = None) -> BasinGrid:
    """Label each cell center of rect = (re_min, re_max, im_min, im_max) by the zero its flow reaches.

    Cells are integrated in fixed chunks, so the result does not depend on
    the number of worker threads.  Without ``cfg`` the looser
    :data:`BASIN_CONFIG` is used.
    """
    cfg = cfg or BASIN_CONFIG
    re_min, re_max, im_min, im_max = map(float, rect)
    if not (0.02 < re_min < re_max < 0.98):
        raise DomainError("basin rectangle must lie within 0.02 < Re z < 0.98")
    if not im_min < im_max:
        raise DomainError("need im_min < im_max")
    if not (1 <= nx <= 4096 and 1 <= ny <= 4096):
        raise DomainError("nx and ny must be in [1, 4096]")
    ix, iy = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    pts = (re_min + (ix + 0.5) * (re_max - re_min) / nx
           + 1j * (im_min + (iy + 0.5) * (im_max - im_min) / ny)).ravel()
    chunks = [pts[i:i + _CHUNK] for i in range(0, pts.size, _CHUNK)]
    n_workers = worker_count(workers)
    if n_workers == 1:
        results = [_run_chunk(c, cfg) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(lambda c: _run_chunk(c, cfg), chunks))
    outcomes = [o for chunk in results for o in chunk]

    registry: list[complex] = []
    labels = np.empty(pts.size, dtype=np.int64)
    for i, o in enumerate(outcomes):
        if isinstance(o, ConvergedToZero):
            for j, r in enumerate(registry):
                if abs(r - o.alpha) < REGISTRY_SEPARATION:
                    labels[i] = j
                    break
            else:
                registry.append(o.alpha)
                labels[i] = len(registry) - 1
        else:
            labels[i] = o.label_code
    return BasinGrid((re_min, re_max, im_min, im_max), nx, ny, labels.reshape(nx, ny), registry)
