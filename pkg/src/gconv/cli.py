"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 symbol not elliptic,
3 input error.
"""
import argparse
import datetime
import os
import sys
import warnings

import numpy as np

from . import __version__
from . import symbols as sym
from .equations import solve
from .errors import NotEllipticError
from .formats import (InputError, load_json, parse_equation, parse_function, parse_grid, parse_symbol,
                      parse_complex, write_csv, write_json)
from .gfourier import TRUNCATION_TOL, FreqGrid, Spectrum, forward, forward_pv, inverse
from .verify import CHECKS, run_checks

EXIT_OK, EXIT_FAIL, EXIT_NOT_ELLIPTIC, EXIT_INPUT = 0, 1, 2, 3


def build_parser():
    p = argparse.ArgumentParser(prog="gconv", description="Convolution equations on the group (-1, 1).")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "solve": "solve an equation given by a JSON spec",
        "transform": "forward or inverse G-Fourier transform",
        "symbol": "tabulate a symbol and report multiplier diagnostics",
        "verify": "run the analytic-oracle checks",
    }
    for name, text in helps.items():
        s = sub.add_parser(name, help=text)
        s.add_argument("--config", help="JSON input file" + (" (optional)" if name == "verify" else ""),
                       required=name != "verify")
        s.add_argument("--out", default=".", help="output directory (default: current)")
        s.add_argument("--grid-T", type=float, help="half width T of the line grid")
        s.add_argument("--grid-N", type=int, help="number of line-grid nodes (power of two, <= 2**20)")
        s.add_argument("--xi-max", type=float, help="frequency range [-xi_max, xi_max]")
        s.add_argument("--xi-N", type=int, help="number of frequency nodes (odd)")
        s.add_argument("--tol", type=float, help="ellipticity threshold (default 1e-10)")
    return p


def _grids(args, doc):
    grid = parse_grid(doc, args.grid_T, args.grid_N)
    f = doc.get("freqs", {}) if isinstance(doc, dict) else {}
    xi_max = args.xi_max if args.xi_max is not None else f.get("xi_max", 8.0)
    count = args.xi_N if args.xi_N is not None else f.get("N", 1025)
    try:
        return grid, FreqGrid(float(xi_max), int(count))
    except (TypeError, ValueError) as exc:
        raise InputError(f"frequency grid: {exc}") from None


def _manifest(args, outputs):
    write_json(os.path.join(args.out, "manifest.json"), {
        "command": args.command,
        "config": args.config,
        "outputs": outputs,
        "version": __version__,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    })


def cmd_solve(args):
    doc = load_json(args.config)
    grid, freqs = _grids(args, doc)
    spec = parse_equation(doc, grid, freqs)
    eps = sym.ELLIPTIC_EPS if args.tol is None else args.tol
    try:
        report = solve(spec, freqs, eps)
    except NotEllipticError as exc:
        write_json(os.path.join(args.out, "report.json"),
                   {"family": spec.family, "status": "not elliptic", "margin": exc.margin, "xi": exc.xi})
        _manifest(args, ["report.json"])
        print(f"not elliptic: {exc}", file=sys.stderr)
        return EXIT_NOT_ELLIPTIC
    u = report.solution
    write_csv(os.path.join(args.out, "solution.csv"), u.t, u.values)
    write_csv(os.path.join(args.out, "weighted.csv"), u.t, report.weighted.values)
    write_json(os.path.join(args.out, "report.json"), {"status": "ok", **report.to_dict()})
    _manifest(args, ["solution.csv", "weighted.csv", "report.json"])
    print(f"{spec.family}: margin {report.symbol_margin:.3e}, freq residual {report.freq_residual:.3e}"
          + ("" if report.space_residual is None else f", space residual {report.space_residual:.3e}"))
    return EXIT_OK


def cmd_transform(args):
    doc = load_json(args.config)
    grid, freqs = _grids(args, doc)
    direction = doc.get("direction", "forward")
    if direction == "forward":
        pv = bool(doc.get("pv", False))
        f = parse_function(doc.get("function", {}), grid.midpoints() if pv else grid, "function")
        spec = forward_pv(f, freqs) if pv else forward(f, freqs)
        write_csv(os.path.join(args.out, "spectrum.csv"), spec.xi, spec.values)
        outputs = ["spectrum.csv"]
    elif direction == "inverse":
        sdoc = doc.get("spectrum", {})
        if sdoc.get("kind") == "pair":
            name = sdoc.get("name")
            if name not in sym.PAIRS or sym.PAIRS[name].poles:
                raise InputError(f"spectrum: no regular closed-form pair named {name!r}")
            values = sym.PAIRS[name](freqs.nodes)
            if max(abs(values[0]), abs(values[-1])) > TRUNCATION_TOL * np.max(np.abs(values)):
                raise InputError(f"spectrum: pair {name!r} does not decay and has no pointwise inverse")
        else:
            values = [parse_complex(v, "spectrum.values") for v in sdoc.get("values", [])]
            if len(values) != freqs.nodes.size:
                raise InputError(f"spectrum: {len(values)} values given, frequency grid has {freqs.nodes.size}")
        u = inverse(Spectrum(freqs, np.asarray(values)), grid)
        write_csv(os.path.join(args.out, "function.csv"), u.t, u.values)
        outputs = ["function.csv"]
    else:
        raise InputError(f"unknown direction {direction!r}")
    _manifest(args, outputs)
    return EXIT_OK


def cmd_symbol(args):
    doc = load_json(args.config)
    grid, freqs = _grids(args, doc)
    a = parse_symbol(doc, grid, freqs)
    if "xi" in doc:
        xi = np.asarray(doc["xi"], dtype=float)
    else:
        xi = (freqs.midpoints() if a.poles else freqs).nodes
    write_csv(os.path.join(args.out, "symbol.csv"), xi, a(xi))
    r = doc.get("r")
    report = sym.multiplier_diagnostics(a, None if r is None else float(r)).to_dict()
    eps = sym.ELLIPTIC_EPS if args.tol is None else args.tol
    report["elliptic"] = bool(report["margin"] > eps) if np.isfinite(report["margin"]) else False
    write_json(os.path.join(args.out, "diagnostics.json"), {"symbol": repr(a), **report})
    _manifest(args, ["symbol.csv", "diagnostics.json"])
    print(f"{a!r}: verdict {report['verdict']}, margin {report['margin']:.3e}")
    return EXIT_OK


def cmd_verify(args):
    doc = load_json(args.config) if args.config else {}
    grid, freqs = _grids(args, doc)
    names = doc.get("checks", list(CHECKS)) if isinstance(doc, dict) else list(CHECKS)
    if not names:
        print("warning: no checks selected; nothing to verify", file=sys.stderr)
        return EXIT_OK
    try:
        results = run_checks(names, grid, freqs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for r in results:
        print(r.line())
    write_json(os.path.join(args.out, "verify.json"),
               [{"name": r.name, "expected": r.expected, "measured": r.measured, "bound": r.bound, "passed": r.passed,
                 "detail": r.detail} for r in results])
    _manifest(args, ["verify.json"])
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


COMMANDS = {"solve": cmd_solve, "transform": cmd_transform, "symbol": cmd_symbol, "verify": cmd_verify}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        os.makedirs(args.out, exist_ok=True)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return COMMANDS[args.command](args)
    except NotEllipticError as exc:
        print(f"not elliptic: {exc}", file=sys.stderr)
        return EXIT_NOT_ELLIPTIC
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
