"""Command-line front end.

Exit codes: 0 success, 1 negative verdict, 2 central but unbalanced,
3 not central, 64 unreadable or invalid input, 65 value outside the domain
of the requested computation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import config as cfgmod
from . import dynamics, period, sync
from .config import ConfigurationError, PlanarConfiguration

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNBALANCED = 2
EXIT_NOT_CENTRAL = 3
EXIT_PARSE = 64
EXIT_DOMAIN = 65


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_tol() -> float:
    raw = os.environ.get("SITNIKOV_TOL")
    if raw is None:
        return cfgmod.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise CLIError(f"SITNIKOV_TOL={raw!r} is not a number", EXIT_PARSE) from None
    if not tol >= 0:
        raise CLIError("SITNIKOV_TOL must be nonnegative", EXIT_PARSE)
    return tol


def load_config(path: str) -> PlanarConfiguration:
    """Read a configuration JSON file; a ``tol`` in the file wins over ``SITNIKOV_TOL``."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CLIError(f"cannot read configuration {path}: {exc}", EXIT_PARSE) from None
    if not isinstance(data, dict) or "masses" not in data or "positions" not in data:
        raise CLIError(f"{path}: expected an object with 'masses' and 'positions'", EXIT_PARSE)
    try:
        tol = data.get("tol", _default_tol())
        return PlanarConfiguration(data["masses"], data["positions"], float(tol))
    except (ConfigurationError, TypeError, ValueError) as exc:
        raise CLIError(f"{path}: {exc}", EXIT_PARSE) from None


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# -- check ------------------------------------------------------------------

def cmd_check(args) -> int:
    c = load_config(args.config)
    cc = cfgmod.cc_residual(c)
    bal = cfgmod.is_balanced(c)
    groups = cfgmod.radius_groups(c)
    report = {
        "n": c.n,
        "is_central": cc.is_central,
        "is_balanced": bal.balanced,
        "lambda": cc.lam,
        "max_residual_norm": cc.max_residual_norm,
        "residual_scale": cc.scale,
        "radius_groups": [
            {"radius": r, "bodies": g, "mass_center_norm": nrm}
            for r, g, nrm in zip(groups.radii, groups.groups, bal.norms)
        ],
    }
    if args.json:
        _emit(_dump_json(report), args.output)
    else:
        lines = [
            f"bodies: {c.n}",
            f"central: {'yes' if cc.is_central else 'no'} "
            f"(lambda={_fmt(cc.lam)}, residual={cc.max_residual_norm:.3e}, scale={cc.scale:.3e})",
            f"balanced: {'yes' if bal.balanced else 'no'}",
        ]
        for r, g, nrm in zip(groups.radii, groups.groups, bal.norms):
            lines.append(f"  radius {_fmt(r)}: bodies {g}, |sum m q| = {nrm:.3e}")
        sys.stdout.write("\n".join(lines) + "\n")
        if args.output:
            Path(args.output).write_text(_dump_json(report), encoding="utf-8")
    if not cc.is_central:
        return EXIT_NOT_CENTRAL
    return EXIT_OK if bal.balanced else EXIT_UNBALANCED


# -- period -----------------------------------------------------------------

def _period_rows(c, args):
    emin = dynamics.e_min(c)
    if args.sweep is not None:
        if args.sweep < 1:
            raise CLIError("--sweep needs a positive count", EXIT_DOMAIN)
        return period.period_curve(c, args.sweep, args.nodes)
    if args.E is not None:
        E = args.E
    elif args.zE is not None:
        if not args.zE > 0:
            raise CLIError("--zE must be positive", EXIT_DOMAIN)
        E = float(dynamics.potential_energy(c, args.zE))
    else:
        tm = period.t_min(c)
        if not args.T > tm:
            raise CLIError(
                f"no periodic orbit with period {args.T!r}: axial periods fill "
                f"(T_min, inf) with T_min = {_fmt(tm)}",
                EXIT_DOMAIN,
            )
        E = period.energy_of_period(c, args.T)
    if not emin < E < 0:
        raise CLIError(
            f"energy {E!r} outside the periodic range (E_min, 0) = ({_fmt(emin)}, 0)",
            EXIT_DOMAIN,
        )
    return [period.period_of_energy(c, E, args.nodes)]


def cmd_period(args) -> int:
    c = load_config(args.config)
    rows = _period_rows(c, args)
    if args.format == "json":
        text = _dump_json(
            [
                {"E": r.E, "z_E": r.z_E, "T0": r.T0, "nodes": r.quadrature_nodes, "est_error": r.est_error}
                for r in rows
            ]
        )
    else:
        text = period.period_curve_csv(rows)
    _emit(text, args.output)
    return EXIT_OK


# -- phase portrait -----------------------------------------------------------

def level_curve(c: PlanarConfiguration, E: float, samples: int, z_max: float | None = None):
    """Points ``(z, +-v)`` on the energy level ``E``."""
    emin = dynamics.e_min(c)
    band = 1e-12 * abs(emin)
    if E < emin - band:
        raise CLIError(f"energy {E!r} below E_min = {_fmt(emin)}", EXIT_DOMAIN)
    if abs(E - emin) <= band:
        return [(0.0, 0.0)]
    if E < 0:
        zE = dynamics.turning_point(c, E)
        zs = zE * np.sin(np.linspace(-np.pi / 2, np.pi / 2, samples))
    else:
        z_max = z_max if z_max is not None else 10 * float(c.radii.max())
        zs = np.linspace(-z_max, z_max, samples)
    v = np.nan_to_num(dynamics.speed_at(c, E, zs), nan=0.0)
    if E < 0:
        v[[0, -1]] = 0.0  # turning points; speed_at only sees roundoff there
    pts = [(float(z), float(w)) for z, w in zip(zs, v)]
    pts += [(float(z), 0.0 - float(w)) for z, w in zip(zs[::-1], v[::-1])]
    return pts


def cmd_phase_portrait(args) -> int:
    c = load_config(args.config)
    rows = ["E,z,v"]
    for E in args.E:
        for z, v in level_curve(c, E, args.samples, args.z_max):
            rows.append(f"{_fmt(E)},{_fmt(z)},{_fmt(v)}")
    _emit("\n".join(rows) + "\n", args.output)
    return EXIT_OK


# -- simulate -----------------------------------------------------------------

def cmd_simulate(args) -> int:
    c = load_config(args.config)
    if not args.t_end > 0:
        raise CLIError("--t-end must be positive", EXIT_DOMAIN)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        if args.full:
            tr = dynamics.integrate_full(
                c, [args.x0, args.y0, args.z0], [args.vx0, args.vy0, args.v0],
                args.t_end, args.rtol, args.atol, args.stride,
            )
            sys.stderr.write(f"max off-axis excursion: {tr.off_axis:.3e}\n")
        else:
            tr = dynamics.integrate_axial(
                c, dynamics.AxialState(args.z0, args.v0), args.t_end, args.rtol, args.atol,
                stride=args.stride, stop_on_escape=args.stop_on_escape,
            )
            sys.stderr.write(f"energy drift: {tr.energy_drift:.3e}\n")
    _emit(tr.to_csv(), args.output)
    return EXIT_OK


# -- sync -----------------------------------------------------------------------

def cmd_sync(args) -> int:
    if args.polygon is not None:
        if args.polygon < 2:
            raise CLIError("--polygon needs n >= 2", EXIT_DOMAIN)
        c = cfgmod.make_polygon(args.polygon, tol=_default_tol())
    elif args.config is not None:
        c = load_config(args.config)
    else:
        raise CLIError("give a configuration file or --polygon N", EXIT_PARSE)
    try:
        rep = sync.sync_check(c)
    except ConfigurationError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_NOT_CENTRAL
    out = {
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "holds": rep.holds,
        "lambda": rep.lam,
        "sum_m_over_s3": rep.stiffness,
        "c": rep.c,
        "formulations_agree": rep.formulations_agree,
        "balanced": cfgmod.is_balanced(c).balanced,
    }
    if rep.c is not None:
        out["pcc_residual"] = sync.verify_pcc(c, rep.c, rep.lam).max
    _emit(_dump_json(out), args.output)
    return EXIT_OK if rep.holds else EXIT_NEGATIVE


# -- polygon scan -------------------------------------------------------------

def cmd_polygon_scan(args) -> int:
    if args.n_max < 2:
        raise CLIError("--n-max must be at least 2", EXIT_DOMAIN)
    scan = sync.polygon_scan(args.n_max)
    sys.stdout.write(f"{scan.boundary}\n")
    if args.output:
        Path(args.output).write_text(scan.to_csv(), encoding="utf-8")
    return EXIT_OK


# -- euler example ------------------------------------------------------------

def cmd_euler_example(args) -> int:
    ex = sync.euler_equilibrium_mu(tol=_default_tol())
    sys.stdout.write(
        f"mu* = {_fmt(ex.mu)}\nr(mu*) = {_fmt(ex.r)}\nC(mu*) = {_fmt(ex.C)}\n"
        f"f(C) = {ex.field_at_C:.3e}\n"
    )
    if args.output:
        Path(args.output).write_text(_dump_json(ex.config.to_dict()), encoding="utf-8")
    return EXIT_OK


# -- generators -----------------------------------------------------------------

def cmd_gen(args) -> int:
    tol = _default_tol()
    try:
        if args.family == "polygon":
            c = cfgmod.make_polygon(args.n, args.mass, args.radius, tol)
        elif args.family == "rhombus":
            c = cfgmod.make_rhombus_cc(args.m1, args.m2, tol)
        else:
            c = cfgmod.make_collinear_cc(args.mu, tol)
    except ConfigurationError as exc:
        raise CLIError(str(exc), EXIT_DOMAIN) from None
    _emit(_dump_json(c.to_dict()), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sitnikov",
        description="Axial motion of a massless particle above rigidly rotating central configurations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="central / balanced test of a configuration file")
    p.add_argument("config")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--output", help="write the JSON report here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("period", help="axial periods from the quadrature formula")
    p.add_argument("config")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--E", type=float, help="energy in (E_min, 0)")
    g.add_argument("--zE", type=float, help="amplitude (turning point)")
    g.add_argument("--T", type=float, help="target period, > T_min")
    g.add_argument("--sweep", type=int, help="number of log-spaced energies")
    p.add_argument("--nodes", type=int, default=None, help="fixed Chebyshev node count")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("phase-portrait", help="energy level curves in the (z, v) plane")
    p.add_argument("config")
    p.add_argument("--E", type=float, nargs="+", required=True)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--z-max", type=float, default=None, help="half-width for open branches")
    p.add_argument("--output")
    p.set_defaults(func=cmd_phase_portrait)

    p = sub.add_parser("simulate", help="integrate the axial (or full space) motion")
    p.add_argument("config")
    p.add_argument("--z0", type=float, default=0.0)
    p.add_argument("--v0", type=float, default=0.0)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--atol", type=float, default=1e-12)
    p.add_argument("--stride", type=float, default=None)
    p.add_argument("--stop-on-escape", action="store_true")
    p.add_argument("--full", action="store_true", help="integrate in space among the rotating primaries")
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--y0", type=float, default=0.0)
    p.add_argument("--vx0", type=float, default=0.0)
    p.add_argument("--vy0", type=float, default=0.0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sync", help="existence of a synchronous axial orbit")
    p.add_argument("config", nargs="?")
    p.add_argument("--polygon", type=int, help="use the equal-mass regular n-gon instead of a file")
    p.add_argument("--output")
    p.set_defaults(func=cmd_sync)

    p = sub.add_parser("polygon-scan", help="largest regular polygon with a synchronous orbit")
    p.add_argument("--n-max", type=int, default=1000)
    p.add_argument("--output", help="CSV with columns n,sum,holds")
    p.set_defaults(func=cmd_polygon_scan)

    p = sub.add_parser("euler-example", help="collinear 3-body CC with an equilibrium at its center of mass")
    p.add_argument("--output", help="write the 4-point configuration JSON here")
    p.set_defaults(func=cmd_euler_example)

    p = sub.add_parser("gen", help="write a configuration file for a named family")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("polygon")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--mass", type=float, default=1.0)
    q.add_argument("--radius", type=float, default=1.0)
    q.add_argument("--output")
    q = fam.add_parser("rhombus")
    q.add_argument("--m1", type=float, required=True)
    q.add_argument("--m2", type=float, required=True)
    q.add_argument("--output")
    q = fam.add_parser("collinear")
    q.add_argument("--mu", type=float, required=True)
    q.add_argument("--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args)
    except CLIError as exc:
        sys.stderr.write(f"sitnikov: {exc}\n")
        return exc.code
    except ValueError as exc:
        sys.stderr.write(f"sitnikov: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
