"""Command-line front end: ``zetaflow <subcommand> [--key value ...]``.

Output is CSV (default) or JSON on standard output, or in ``--out FILE``.
Reals are written with 17 significant digits so every value parses back
exactly.  Exit codes: 0 success, 2 usage error, 3 domain or convergence
error (message on standard error).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import flow, gfun, hermite, scan, specfun
from .errors import ZetaflowError
from .verify import run_checks

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def fmt(x) -> str:
    """Locale-independent real formatting with 17 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"refusing to serialize non-finite value {x!r}")
    return format(x, ".17g")


def to_json(obj) -> str:
    """Minimal JSON writer that formats floats through :func:`fmt`."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, float, np.integer, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


class _Table:
    """Rows under one header, with optional trailing '# ...' sections (CSV only)."""

    def __init__(self, header, rows, trailer=(), json_obj=None):
        self.header = list(header)
        self.rows = rows
        self.trailer = list(trailer)
        self.json_obj = json_obj

    def render(self, form: str) -> str:
        if form == "json":
            obj = self.json_obj
            if obj is None:
                obj = [dict(zip(self.header, r)) for r in self.rows]
                obj = obj[0] if len(obj) == 1 else obj
            return to_json(obj) + "\n"
        buf = io.StringIO()
        buf.write(",".join(self.header) + "\n")
        for r in self.rows:
            buf.write(",".join(v if isinstance(v, str) else fmt(v) for v in r) + "\n")
        for r in self.trailer:
            buf.write("# " + ",".join(v if isinstance(v, str) else fmt(v) for v in r) + "\n")
        return buf.getvalue()


def _tol(args):
    return specfun.Tolerance(args.tol) if args.tol is not None else specfun.DEFAULT_TOL


def cmd_zeta(args):
    z = complex(args.re, args.im)
    v = specfun.zeta(z, _tol(args))
    return _Table(["re", "im", "zeta_re", "zeta_im", "abs_err"],
                  [[z.real, z.imag, v.value.real, v.value.imag, v.abs_err]])


def cmd_gamma(args):
    z = complex(args.re, args.im)
    v = specfun.gamma(z)
    return _Table(["re", "im", "gamma_re", "gamma_im", "abs_err"],
                  [[z.real, z.imag, v.value.real, v.value.imag, v.abs_err]])


def cmd_gfun(args):
    z = complex(args.re, args.im)
    a = gfun.g_identity(z, _tol(args))
    b = gfun.g_integral(z)
    return _Table(
        ["re", "im", "g_re", "g_im", "abs_err", "g_integral_re", "g_integral_im", "integral_abs_err"],
        [[z.real, z.imag, a.value.real, a.value.imag, a.abs_err, b.value.real, b.value.imag, b.abs_err]],
    )


def cmd_vhat(args):
    if args.t_end is None:
        ts = [args.t]
    else:
        if args.step is None or args.step <= 0:
            raise ValueError("--t-end needs a positive --step")
        n = int(math.floor((args.t_end - args.t) / args.step + 1e-9))
        if n < 0:
            raise ValueError("--t-end must not be below --t")
        ts = [args.t + k * args.step for k in range(n + 1)]
    rows = []
    for t in ts:
        v = gfun.v_hat(args.sigma, t)
        rows.append([args.sigma, t, v.value.real, v.value.imag, v.abs_err])
    header = ["sigma", "t", "vhat_re", "vhat_im", "abs_err"]
    obj = None
    if len(rows) > 1:
        obj = {"sigma": args.sigma, "rows": rows, "columns": header}
    return _Table(header, rows, json_obj=obj)


def cmd_hermite(args):
    hc = hermite.expand(args.sigma, args.order)
    if args.eval_x is not None:
        x = args.eval_x
        return _Table(["sigma", "order", "x", "reconstruct", "v_sigma"],
                      [[args.sigma, args.order, x, hermite.reconstruct(hc, x), gfun.v_sigma(args.sigma, x)]])
    if args.eval_t is not None:
        t = args.eval_t
        a = hermite.reconstruct_hat(hc, t)
        b = gfun.v_hat(args.sigma, t).value
        return _Table(["sigma", "order", "t", "hat_re", "hat_im", "vhat_re", "vhat_im"],
                      [[args.sigma, args.order, t, a.real, a.imag, b.real, b.imag]])
    rows = [[n, hc.coeffs[n], hc.ortho[n]] for n in range(hc.order + 1)]
    obj = {"sigma": hc.sigma, "order": hc.order,
           "coeffs": [float(c) for c in hc.coeffs], "ortho_coeffs": [float(c) for c in hc.ortho]}
    return _Table(["n", "coeff", "ortho_coeff"], rows, json_obj=obj)


def _outcome_fields(out):
    p = out.point
    return out.kind, p.real, p.imag


def cmd_flow(args):
    kw = {}
    if args.t_max is not None:
        kw["t_max"] = args.t_max
    if args.rel_tol is not None:
        kw["rel_tol"] = args.rel_tol
    cfg = flow.FlowConfig(**kw)
    tr = flow.integrate(complex(args.re, args.im), cfg)
    kind, pre, pim = _outcome_fields(tr.outcome)
    samples = [[t, z.real, z.imag, za] for t, z, za in tr.samples]
    obj = {
        "start_re": tr.start.real,
        "start_im": tr.start.imag,
        "outcome": kind,
        "alpha": {"re": pre, "im": pim} if kind == "converged" else None,
        "end": {"re": pre, "im": pim},
        "decay_residual_max": tr.decay_residual_max,
        "samples": samples,
    }
    trailer = [["outcome", kind, pre, pim], ["decay_residual_max", tr.decay_residual_max]]
    return _Table(["t", "re", "im", "zeta_abs"], samples, trailer, obj)


def cmd_basin(args):
    cfg = flow.BASIN_CONFIG
    if args.t_max is not None:
        cfg = flow.FlowConfig(rel_tol=cfg.rel_tol, conv_eps=cfg.conv_eps, t_max=args.t_max)
    rect = (args.re_min, args.re_max, args.im_min, args.im_max)
    g = flow.basin_grid(rect, args.nx, args.ny, cfg)
    rows = []
    for ix in range(g.nx):
        for iy in range(g.ny):
            c = g.cell_center(ix, iy)
            rows.append([ix, iy, c.real, c.imag, int(g.labels[ix, iy])])
    trailer = [["zero", "idx", "re", "im"]] + [["zero", i, z.real, z.imag] for i, z in enumerate(g.zeros_registry)]
    obj = {
        "rect": list(rect),
        "nx": g.nx,
        "ny": g.ny,
        "cells": rows,
        "zeros": [[i, z.real, z.imag] for i, z in enumerate(g.zeros_registry)],
    }
    return _Table(["ix", "iy", "re", "im", "label"], rows, trailer, obj)


def cmd_scan(args):
    rep = scan.scan_vhat(args.sigma, args.t_min, args.t_max, args.step)
    rows = [[t, v] for t, v in rep.local_minima]
    trailer = [
        ["global_min", rep.global_min_t, rep.global_min_value],
        ["positive_floor", rep.positive_floor],
    ]
    obj = {
        "sigma": rep.sigma,
        "t_min": rep.t_min,
        "t_max": rep.t_max,
        "step": rep.step,
        "global_min_t": rep.global_min_t,
        "global_min_value": rep.global_min_value,
        "positive_floor": rep.positive_floor,
        "local_minima": rows,
    }
    return _Table(["t", "value"], rows, trailer, obj)


def cmd_verify(args):
    rows = []
    for name, passed, detail in run_checks(quick=args.quick):
        rows.append(["PASS" if passed else "FAIL", name, detail])
    all_ok = all(r[0] == "PASS" for r in rows)
    table = _Table(["status", "check", "detail"], [[r[0], r[1], r[2]] for r in rows],
                   json_obj={"all_passed": all_ok,
                             "checks": [{"status": r[0], "check": r[1], "detail": r[2]} for r in rows]})
    table.exit_code = EXIT_OK if all_ok else 1
    return table


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetaflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="write to FILE instead of standard output")
        p.set_defaults(func=func)
        return p

    for name, func, help_ in (("zeta", cmd_zeta, "Riemann zeta at a point"),
                              ("gamma", cmd_gamma, "Gamma at a point"),
                              ("gfun", cmd_gfun, "G(z) by both routes")):
        p = add(name, func, help_)
        p.add_argument("--re", type=float, required=True)
        p.add_argument("--im", type=float, required=True)
        p.add_argument("--tol", type=float, default=None)

    p = add("vhat", cmd_vhat, "Fourier transform of V_sigma")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--step", type=float, default=None)

    p = add("hermite", cmd_hermite, "Hermite expansion of V_sigma")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--order", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eval-x", type=float, default=None)
    g.add_argument("--eval-t", type=float, default=None)

    p = add("flow", cmd_flow, "integrate the Newton flow from a point")
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, required=True)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--rel-tol", type=float, default=None)

    p = add("basin", cmd_basin, "basins of attraction on a grid")
    for key in ("--re-min", "--re-max", "--im-min", "--im-max"):
        p.add_argument(key, type=float, required=True)
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--t-max", type=float, default=None)

    p = add("scan", cmd_scan, "scan |V_hat_sigma| for minima")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--step", type=float, default=0.01)

    p = add("verify", cmd_verify, "run the identity suite")
    p.add_argument("--quick", action="store_true")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        table = args.func(args)
        text = table.render(args.format)
    except (ZetaflowError, ValueError, OverflowError, ArithmeticError) as exc:
        stderr.write(f"zetaflow {args.command}: {exc}\n")
        return EXIT_DOMAIN
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return getattr(table, "exit_code", EXIT_OK)


def main():
    sys.exit(run())
