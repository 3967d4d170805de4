"""Command-line front end with bit-stable CSV/JSON/TSV export.

Numbers are serialized with 17 significant digits ('.' decimal separator,
no locale), which round-trips binary64 exactly, so identical configurations
produce byte-identical files.  Exit codes: 0 success, 2 domain or regime
error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .closedform import build_solution, eval_solution
from .dynamics import PhaseState, state_from_integrals
from .errors import (
    DegenerateCurve,
    DomainError,
    MagflowError,
    NoReturnFound,
    OpenCurve,
    ReductionInconsistency,
    StepFailure,
    UnsupportedRegime,
    WrongRegime,
)
from .integrate import TOL_MAX, TOL_MIN, integrate
from .legendre import ReductionCase
from .orbits import (
    CylinderStrip,
    OrbitKind,
    action_contractible_formula,
    action_direct,
    action_increment,
    classify,
    contractible_orbit,
    cycle_action,
    film_action,
    film_strip_grid_search,
    vertical_line_action,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3

_DOMAIN_ERRORS = (DomainError, DegenerateCurve, UnsupportedRegime, WrongRegime, OpenCurve)
_NUMERIC_ERRORS = (StepFailure, ReductionInconsistency, NoReturnFound)


def fmt(v) -> str:
    """17-significant-digit decimal form; empty string for missing values."""
    if v is None:
        return ""
    return f"{float(v):.17g}"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _json_dump(payload: dict, out: str | None) -> None:
    _write(json.dumps(payload, indent=2, allow_nan=True) + "\n", out)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None,
                        help="JSON file of defaults; explicit flags override it")
    common.add_argument("--e", dest="e", type=float, default=None, help="energy level E")
    common.add_argument("--p", dest="p", type=float, default=None, help="momentum p")
    common.add_argument("--x0", type=float, default=None)
    common.add_argument("--y0", type=float, default=None)
    common.add_argument("--sign", type=int, choices=(-1, 1), default=None,
                        help="sign of xdot(0)")
    common.add_argument("--t-end", dest="t_end", type=float, default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--e-min", dest="e_min", type=float, default=None)
    common.add_argument("--e-max", dest="e_max", type=float, default=None)
    common.add_argument("--p-min", dest="p_min", type=float, default=None)
    common.add_argument("--p-max", dest="p_max", type=float, default=None)
    common.add_argument("--grid-n", dest="grid_n", type=int, default=None)
    common.add_argument("--xa", type=float, default=None)
    common.add_argument("--xb", type=float, default=None)
    common.add_argument("--strip", type=int, choices=(1, 2), default=None)
    common.add_argument("--phase", type=float, default=None)
    common.add_argument("--out", type=str, default=None)
    common.add_argument("--format", dest="format", type=str,
                        choices=("csv", "json", "tsv-plot"), default=None)

    parser = argparse.ArgumentParser(
        prog="magflow",
        description="Magnetic geodesic flow on the flat two-torus "
                    "(field cos x dx^dy): simulation, closed forms, "
                    "classification, actions and films.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common],
                   help="integrate one orbit and export CSV samples")
    sub.add_parser("compare", parents=[common],
                   help="closed form vs direct integration report")
    sub.add_parser("classify", parents=[common],
                   help="orbit type of the level set (E, p)")
    sub.add_parser("orbit", parents=[common],
                   help="construct a simple contractible orbit")
    sub.add_parser("action", parents=[common],
                   help="action of the contractible orbit, three ways")
    sub.add_parser("film", parents=[common],
                   help="action of a cylinder-strip film")
    sub.add_parser("sweep", parents=[common],
                   help="classification sweep over an (E, p) grid")
    return parser


_DEFAULTS = dict(
    e=0.125, p=0.0, x0=0.0, y0=0.0, sign=1, t_end=50.0, tol=1e-11,
    e_min=0.05, e_max=0.45, p_min=-0.5, p_max=0.5, grid_n=1001,
    xa=0.5 * math.pi, xb=1.5 * math.pi, strip=1, phase=0.0,
    out=None, format=None,
)


def _resolve_config(args: argparse.Namespace) -> argparse.Namespace:
    """Layer: built-in defaults < JSON config file < explicit flags."""
    cfg = dict(_DEFAULTS)
    if args.config is not None:
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        unknown = set(file_cfg) - set(_DEFAULTS)
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    for key in _DEFAULTS:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            cfg[key] = flag_val
    ns = argparse.Namespace(**cfg)
    ns.command = args.command
    _validate(ns)
    return ns


_COMMAND_FORMATS = {
    "simulate": "csv",
    "compare": "json",
    "classify": "json",
    "orbit": "json",
    "action": "json",
    "film": "json",
    "sweep": "tsv-plot",
}


def _validate(cfg: argparse.Namespace) -> None:
    if not TOL_MIN <= cfg.tol <= TOL_MAX:
        raise DomainError(f"tol must lie in [{TOL_MIN}, {TOL_MAX}]")
    if cfg.t_end <= 0.0:
        raise DomainError("t-end must be positive")
    if cfg.grid_n < 2:
        raise DomainError("grid-n must be at least 2")
    if cfg.sign not in (-1, 1):
        raise DomainError("sign must be +1 or -1")
    native = _COMMAND_FORMATS[cfg.command]
    if cfg.format is not None and cfg.format != native:
        raise DomainError(
            f"command '{cfg.command}' writes {native} output, not {cfg.format}"
        )


def cmd_simulate(cfg) -> None:
    header = "t,x,y,xdot,ydot,E_inst,p_inst"
    if cfg.e == 0.0:
        state = PhaseState(cfg.x0, cfg.y0, 0.0, 0.0)
        rows = [_csv_row(0.0, state.as_array())]
    else:
        state = state_from_integrals(cfg.x0, cfg.y0, cfg.e, cfg.p, cfg.sign)
        traj = integrate(state, cfg.t_end, cfg.tol, grid=cfg.grid_n,
                         with_events=False)
        grid = np.linspace(0.0, cfg.t_end, cfg.grid_n)
        x, y, xd, yd = traj.eval(grid)
        rows = [_csv_row(t, (xi, yi, xdi, ydi))
                for t, xi, yi, xdi, ydi in zip(grid, x, y, xd, yd)]
    _write("\n".join([header] + rows) + "\n", cfg.out)


def _csv_row(t, s) -> str:
    x, y, xd, yd = (float(v) for v in s)
    e_inst = 0.5 * (xd * xd + yd * yd)
    p_inst = yd + math.sin(x)
    return ",".join(fmt(v) for v in (t, x, y, xd, yd, e_inst, p_inst))


def cmd_compare(cfg) -> None:
    state = state_from_integrals(cfg.x0, cfg.y0, cfg.e, cfg.p, cfg.sign)
    sol = build_solution(cfg.x0, cfg.y0, cfg.e, cfg.p, cfg.sign)
    traj = integrate(state, cfg.t_end, cfg.tol, with_events=False)
    grid = np.linspace(0.0, cfg.t_end, cfg.grid_n)
    xn, yn, _, _ = traj.eval(grid)
    xc, yc, _, _ = eval_solution(sol, grid)
    payload = {
        "E": cfg.e,
        "p": cfg.p,
        "case": sol.reduction.case_tag.value,
        "k2": sol.k2,
        "C": sol.C,
        "D": sol.D,
        "x_period": sol.x_period,
        "sup_err_sinx": float(np.abs(np.sin(xc) - np.sin(xn)).max()),
        "sup_err_y": float(np.abs(yc - yn).max()),
        "samples": int(cfg.grid_n),
    }
    _json_dump(payload, cfg.out)


def cmd_classify(cfg) -> None:
    _json_dump(classify(cfg.e, cfg.p).to_dict(), cfg.out)


def cmd_orbit(cfg) -> None:
    sol = contractible_orbit(cfg.e, cfg.strip, cfg.phase)
    payload = {
        "E": cfg.e,
        "strip": cfg.strip,
        "phase_x0": cfg.phase,
        "amplitude": math.asin(math.sqrt(2.0 * cfg.e)),
        "k2": sol.k2,
        "C": sol.C,
        "D": sol.D,
        "period": sol.x_period,
        "delta_y": sol.delta_y_per_cycle,
        "action": action_direct(sol),
    }
    _json_dump(payload, cfg.out)


def cmd_action(cfg) -> None:
    sol = contractible_orbit(cfg.e, cfg.strip, cfg.phase)
    direct = action_direct(sol)
    increment = action_increment(sol)
    formula = action_contractible_formula(cfg.e)
    payload = {
        "E": cfg.e,
        "action_direct": direct,
        "action_increment": increment,
        "action_formula": formula,
        "max_discrepancy": max(abs(direct - increment), abs(direct - formula)),
    }
    _json_dump(payload, cfg.out)


def cmd_film(cfg) -> None:
    strip = CylinderStrip(cfg.xa, cfg.xb, cfg.e)
    value = film_action(strip)
    best = 4.0 * math.pi * (math.sqrt(2.0 * cfg.e) - 1.0)
    is_min = (
        abs(math.remainder(cfg.xa - 0.5 * math.pi, 2.0 * math.pi)) < 1e-6
        and abs(math.remainder(cfg.xb - 1.5 * math.pi, 2.0 * math.pi)) < 1e-6
    )
    payload = {
        "E": cfg.e,
        "x_a": cfg.xa,
        "x_b": cfg.xb,
        "action": value,
        "minimizer_action": best,
        "is_minimizer": is_min,
    }
    _json_dump(payload, cfg.out)


def _sweep_cell(args):
    E, p = args
    try:
        c = classify(E, p)
    except MagflowError:
        return (E, p, "", None, None, None)
    action = None
    if c.kind in (OrbitKind.TRAPPED_OVAL, OrbitKind.CROSSING_LIBRATOR,
                  OrbitKind.WINDING):
        try:
            action = cycle_action(E, p)
        except MagflowError:
            action = None
    elif c.kind is OrbitKind.VERTICAL_LINE:
        try:
            action = vertical_line_action(E, p)
        except MagflowError:
            action = None
    return (E, p, c.kind.value, c.delta_y, c.period, action)


def cmd_sweep(cfg) -> None:
    if cfg.e_min <= 0.0 or cfg.e_max < cfg.e_min or cfg.p_max < cfg.p_min:
        raise DomainError("sweep ranges require 0 < e-min <= e-max, p-min <= p-max")
    es = np.linspace(cfg.e_min, cfg.e_max, cfg.grid_n)
    ps = np.linspace(cfg.p_min, cfg.p_max, cfg.grid_n)
    cells = [(float(E), float(p)) for E in es for p in ps]
    max_workers = int(os.environ.get("MAGFLOW_THREADS", "0")) or min(32, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        rows = list(pool.map(_sweep_cell, cells))
    rows.sort(key=lambda r: (r[0], r[1]))
    lines = ["E\tp\tkind\tdelta_y\tperiod\taction"]
    for E, p, kind, dy, period, action in rows:
        lines.append("\t".join([fmt(E), fmt(p), kind, fmt(dy), fmt(period), fmt(action)]))
    _write("\n".join(lines) + "\n", cfg.out)


_COMMANDS = {
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "classify": cmd_classify,
    "orbit": cmd_orbit,
    "action": cmd_action,
    "film": cmd_film,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        _COMMANDS[args.command](cfg)
    except _DOMAIN_ERRORS as exc:
        print(f"magflow: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _NUMERIC_ERRORS as exc:
        print(f"magflow: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
