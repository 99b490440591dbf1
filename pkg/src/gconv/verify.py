"""Analytic-oracle checks of the whole toolkit.

Each check returns a ``CheckResult`` holding a measured error and the bound it
must satisfy.  The CLI ``verify`` command and the acceptance tests both run
these functions.
"""
from dataclasses import dataclass
import warnings

import numpy as np
from scipy.integrate import quad

from . import symbols as sym
from .equations import IDESpec, manufacture, solve, tricomi_operator
from .errors import NotEllipticError
from .gfourier import (DEFAULT_FREQS, DEFAULT_GRID, LineGrid, SampledFunction, builtin,
                       forward, forward_pv, inverse, parseval_ratio)
from .group import one_minus, one_plus, sech
from .operators import apply, cauchy_singular, convolve


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    bound: float
    passed: bool
    detail: str = ""
    expected: float = 0.0  # every check measures a deviation from an exact value

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<24} expected {self.expected:g}  got {self.measured:.3e}  "
                f"bound {self.bound:.1e}  {self.detail}")


def _result(name, measured, bound, detail=""):
    measured = float(measured)
    return CheckResult(name, measured, bound, bool(measured <= bound), detail)


def _relmax(got, exact):
    return float(np.max(np.abs(got - exact) / np.abs(exact)))


def check_transform_pairs(grid=DEFAULT_GRID, freqs=DEFAULT_FREQS, tol=1e-6):
    """The five closed-form transforms on ``|xi| <= 4``, away from 0 for singular ones."""
    xi = freqs.nodes
    near = np.abs(xi) <= 4.0
    away = near & (np.abs(xi) >= 0.05)
    mid = grid.midpoints()
    cases = {
        "inv_y": (forward_pv(SampledFunction.from_line(np.ones_like, mid), freqs), away),
        "sqrt": (forward(SampledFunction.from_line(sech, grid), freqs), near),
        "sqrt_over_y": (forward_pv(SampledFunction.from_line(sech, mid), freqs), away),
        "y": (forward(SampledFunction.from_line(np.tanh, grid), freqs), away),
        "one_minus_y2": (forward(SampledFunction.from_line(lambda t: sech(t) ** 2, grid), freqs), near),
    }
    errs = {}
    for name, (spec, mask) in cases.items():
        errs[name] = _relmax(spec.values[mask], sym.PAIRS[name](xi[mask]))
    worst = max(errs, key=errs.get)
    return _result("transform pairs", errs[worst], tol, f"worst: {worst}")


def _parseval_pairs(grid):
    t = grid.nodes
    mk = lambda v: SampledFunction(grid, v)
    return [
        (mk(sech(t)), mk(sech(t))),
        (mk(sech(t) ** 2), mk(np.exp(-t * t))),
        (mk(np.exp(-t * t)), mk(np.exp(-(t - 0.5) ** 2))),
        (mk(sech(t) * (1 + 1j * t)), mk(sech(t - 1.0))),
        (mk(t * np.exp(-t * t / 2)), mk(np.tanh(t) * sech(t))),
    ]


def check_parseval(grid=DEFAULT_GRID, freqs=DEFAULT_FREQS, tol=1e-8):
    ratios = np.array([parseval_ratio(a, b, freqs) for a, b in _parseval_pairs(grid)])
    worst = ratios[np.argmax(np.abs(ratios - np.pi))]
    return _result("parseval constant", abs(worst - np.pi), tol, f"5 pairs, worst ratio {worst:.15f}")


def check_derivative_symbol(grid=DEFAULT_GRID, freqs=DEFAULT_FREQS, tol=1e-6):
    # D_G of u pulls back to d/dt of the pullback: -tanh sech and -2 tanh sech^2.
    t, xi = grid.nodes, freqs.nodes
    worst = 0.0
    for u, du in ((sech(t), -np.tanh(t) * sech(t)), (sech(t) ** 2, -2.0 * np.tanh(t) * sech(t) ** 2)):
        U = forward(SampledFunction(grid, u), freqs).values
        DU = forward(SampledFunction(grid, du), freqs).values
        worst = max(worst, np.max(np.abs(DU + 2j * xi * U)) / np.max(np.abs(U)))
    return _result("derivative symbol", worst, tol, "sech, sech2")


def check_round_trip(grid=DEFAULT_GRID, freqs=DEFAULT_FREQS, tol=1e-8):
    worst = 0.0
    for name in ("sech", "sech2", "gauss"):
        u = builtin(name, grid)
        back = inverse(forward(u, freqs), grid)
        worst = max(worst, np.linalg.norm(back.values - u.values) / np.linalg.norm(u.values))
    return _result("round trip", worst, tol, "sech, sech2, gauss")


def check_lemma_decomposition(freqs=DEFAULT_FREQS, tol=1e-12):
    dec = sym.invert_tanh_family(2.0, 1.0, 1.0, np.pi, freqs)
    a = dec.symbol()(freqs.nodes)
    err = np.max(np.abs(a * dec.inverse_at(freqs.nodes) - 1.0))
    slope = dec.tail_slope()
    ok = err <= tol and slope <= -0.9 * np.pi
    return CheckResult("inverse decomposition", float(err), tol, bool(ok),
                       f"tail slope {slope:.4f} (bound {-0.9 * np.pi:.4f})")


def _rel_l2(a, b):
    return float(np.linalg.norm(a.values - b.values) / np.linalg.norm(b.values))


MANUFACTURED = (
    ("ide", None, "gauss"),
    ("prandtl", {"c0": 1.0, "c1": 1.0}, "sech2"),
    ("tricomi", {"c0": 2.0, "c1": 1.0, "c2": 1.0}, "sech"),
    ("lb", {"c0": 2.0, "c1": 1.0}, "sech2"),
)


def check_manufactured(grid=DEFAULT_GRID, freqs=DEFAULT_FREQS, tol=1e-6, freq_tol=1e-8):
    worst_sol, worst_freq, details = 0.0, 0.0, []
    for family, coeffs, name in MANUFACTURED:
        exact = builtin(name, grid)
        if family == "ide":
            coeffs = IDESpec((1.0, 1.0), None, (0.5,), (0,), (1,), (builtin("sech", grid),))
        report = solve(manufacture(family, coeffs, exact, freqs), freqs)
        err = _rel_l2(report.weighted, exact)
        worst_sol, worst_freq = max(worst_sol, err), max(worst_freq, report.freq_residual)
        details.append(f"{family} {err:.1e}/{report.freq_residual:.1e}")
    ok = worst_sol <= tol and worst_freq <= freq_tol
    return CheckResult("manufactured solutions", worst_sol, tol, bool(ok),
                       f"freq residual {worst_freq:.1e} (bound {freq_tol:.0e}); " + ", ".join(details))


def check_not_elliptic(tol=0.01):
    cases = {
        "prandtl": sym.prandtl_symbol(-1.0, 0.5 * np.pi),
        "tricomi": sym.tricomi_symbol(1.0, 0.0, -1.0),
        "lb": sym.lb_symbol(0.0, 1.0),
    }
    worst, missed = 0.0, []
    for name, a in cases.items():
        try:
            sym.check_elliptic(a)
        except NotEllipticError as exc:
            worst = max(worst, abs(exc.xi))
        else:
            missed.append(name)
            worst = np.inf
    detail = "all gated" if not missed else "accepted: " + ", ".join(missed)
    return _result("non-ellipticity gating", worst, tol, detail)


def _cauchy_oracle(x):
    # QAWC computes PV int (1 - y^2) / (y - x) dy.
    return quad(lambda y: 1.0 - y * y, -1.0, 1.0, weight="cauchy", wvar=x)[0] / (np.pi * 1j)


def check_cauchy(grid=DEFAULT_GRID, freqs=DEFAULT_FREQS, tol=1e-4, points=64):
    xs = np.linspace(-0.95, 0.95, points)
    u = SampledFunction.from_line(lambda t: sech(t) ** 2, grid)
    got = cauchy_singular(u, freqs, at=np.arctanh(xs))
    exact = np.array([_cauchy_oracle(x) for x in xs])
    err = np.max(np.abs(got - exact)) / np.max(np.abs(exact))
    return _result("cauchy decomposition", err, tol, f"{points} points")


def direct_convolution(k0, u):
    """``int k0(x o (-y)) u(y) dG(y)`` by the trapezoidal rule in ``y``.

    ``k0`` receives ``sqrt(1 - z^2)`` for ``z = x o (-y)``, computed without
    forming ``z`` as ``sqrt((1 - x^2)(1 - y^2)) / (1 - x y)`` with
    ``1 - x y = ((1 + x)(1 - y) + (1 - x)(1 + y)) / 2``.
    """
    t = u.t
    tx, ty = t[:, None], t[None, :]
    one_m_xy = 0.5 * (one_plus(tx) * one_minus(ty) + one_minus(tx) * one_plus(ty))
    root = sech(tx) * sech(ty) / one_m_xy
    return u.with_values(u.grid.spacing * (k0(root) @ u.values))


def check_convolution(freqs=DEFAULT_FREQS, tol=1e-6):
    grid = LineGrid(20.0, 256)
    u = SampledFunction.from_line(sech, grid)
    spectral = convolve(u, u, freqs)
    direct = direct_convolution(lambda root: root, u)
    err = _rel_l2(spectral, direct)
    k_l1 = grid.spacing * np.sum(np.abs(u.values))
    bound_ok = spectral.l2() <= k_l1 * u.l2()
    return CheckResult("convolution theorem", err, tol, bool(err <= tol and bound_ok),
                       f"L1 bound {'holds' if bound_ok else 'FAILS'}: "
                       f"{spectral.l2():.4f} <= {k_l1 * u.l2():.4f}")


def lb_identity_error(count=100, seed=0):
    """Max relative gap in ``(1-x^2)(1-y^2)/((y-x)(1-xy)) = z - 1/z``, ``z = (x-y)/(1-xy)``."""
    rng = np.random.default_rng(seed)
    x, y = rng.uniform(-0.99, 0.99, (2, count))
    lhs = (1 - x * x) * (1 - y * y) / ((y - x) * (1 - x * y))
    z = (x - y) / (1 - x * y)
    rhs = z - 1.0 / z
    return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))


def check_identities(grid=DEFAULT_GRID, freqs=DEFAULT_FREQS, tol_identity=1e-13, tol_kernel=1e-6):
    gap = lb_identity_error()
    a = sym.tricomi_symbol(2.0, 1.0, 1.0)
    worst = 0.0
    for name in ("sech", "sech2", "gauss"):
        v0 = builtin(name, grid)
        by_kernel = tricomi_operator(2.0, 1.0, 1.0, v0, freqs)
        by_symbol = apply(a, v0, freqs)
        worst = max(worst, _rel_l2(by_kernel, by_symbol))
    ok = gap <= tol_identity and worst <= tol_kernel
    return CheckResult("algebraic identities", gap, tol_identity, bool(ok),
                       f"tricomi kernel vs symbol {worst:.1e} (bound {tol_kernel:.0e})")


CHECKS = {
    "transform_pairs": check_transform_pairs,
    "parseval": check_parseval,
    "derivative_symbol": check_derivative_symbol,
    "round_trip": check_round_trip,
    "lemma_decomposition": check_lemma_decomposition,
    "manufactured": check_manufactured,
    "not_elliptic": check_not_elliptic,
    "cauchy": check_cauchy,
    "convolution": check_convolution,
    "identities": check_identities,
}

# Checks that take the working grids; the rest use fixed data.
_GRID_ARGS = {"transform_pairs", "parseval", "derivative_symbol", "round_trip", "manufactured",
              "cauchy", "identities"}


def run_checks(names=None, grid=DEFAULT_GRID, freqs=DEFAULT_FREQS):
    """Run the named checks (all by default) and return their results in order."""
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    results = []
    for name in names:
        kwargs = {}
        if name in _GRID_ARGS:
            kwargs["grid"] = grid
        if name not in ("not_elliptic",):
            kwargs["freqs"] = freqs
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                results.append(CHECKS[name](**kwargs))
            except Exception as exc:  # a broken configuration is a failed check
                results.append(CheckResult(name, float("inf"), 0.0, False, f"error: {exc}"))
    return results

