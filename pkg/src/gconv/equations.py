"""Solvers for convolution equations on G.

Each family is reduced to ``A(xi) U(xi) = F(xi)`` with ``U`` the transform of
a (weighted) unknown and ``F`` that of a weighted right-hand side:

============  ===========================  ===================  =================
family        symbol A                     weighted rhs         unknown
============  ===========================  ===================  =================
prandtl       c0 + 2 c1 xi coth(pi xi)     (1 - x^2) f          u
tricomi       c0 - i c1 tanh(pi xi)        sqrt(1 - x^2) g      sqrt(1 - x^2) v
              + c2 / cosh(pi xi)
lb            c0 - i c1 tanh(pi xi / 2)    (1 - x^2) h((1+x)/2)  w = V phi
ide           sum c_k (-2 i xi)^k + ...    w                    u
============  ===========================  ===================  =================

The forward operators below are assembled from kernel convolutions rather
than from these symbols, so a manufactured solution checks the symbol too.
"""
from dataclasses import dataclass, field
import warnings

import numpy as np
from scipy.integrate import quad

from . import symbols as sym
from .gfourier import DEFAULT_FREQS, SampledFunction, evaluate, forward, forward_pv, inverse
from .group import sech
from .operators import convolve, d_g
from .spaces import smoothness_diagnostics

SPACE_POINTS = 33


@dataclass(frozen=True)
class PrandtlSpec:
    """``c0 u/(1-x^2) + (c1/pi) int u'(y) dy/(x - y) = f`` on (-1, 1)."""

    c0: complex
    c1: complex
    f: SampledFunction

    family = "prandtl"


@dataclass(frozen=True)
class TricomiSpec:
    """``c0 v + (c1/pi) int v dy/(y-x) + (c2/pi) int v dy/(1-xy) = g``."""

    c0: complex
    c1: complex
    c2: complex
    g: SampledFunction

    family = "tricomi"


@dataclass(frozen=True)
class LBSpec:
    """Lavrentjev-Bitsadze equation on (0, 1).

    ``h`` holds samples at ``s_j = (1 + tanh t_j) / 2``.
    """

    c0: complex
    c1: complex
    h: SampledFunction

    family = "lb"


@dataclass(frozen=True)
class IDESpec:
    """``sum_k c_k D^k u + d_k D^{m_k} (K_k * D^{n_k} u) = w``."""

    c: tuple
    w: SampledFunction
    d: tuple = ()
    m_k: tuple = ()
    n_k: tuple = ()
    kernels: tuple = ()
    m: int = None

    family = "ide"

    @property
    def order(self):
        return len(self.c) - 1 if self.m is None else int(self.m)


@dataclass
class SolveReport:
    family: str
    solution: SampledFunction
    weighted: SampledFunction
    rhs0: SampledFunction
    symbol: sym.Symbol
    symbol_margin: float
    freq_residual: float = float("nan")
    space_residual: float = None
    warnings: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    decomposition: sym.InverseDecomposition = None
    kernel: SampledFunction = None

    def to_dict(self):
        out = {
            "family": self.family,
            "symbol": repr(self.symbol),
            "weight_order": self.symbol.weight_order,
            "symbol_margin": self.symbol_margin,
            "freq_residual": self.freq_residual,
            "space_residual": self.space_residual,
            "warnings": list(self.warnings),
            "diagnostics": dict(self.diagnostics),
        }
        if self.decomposition is not None:
            d = self.decomposition
            out["decomposition"] = {"h": d.h, "d0": [d.d0.real, d.d0.imag],
                                    "d1": [d.d1.real, d.d1.imag], "tail_slope": d.tail_slope()}
        return out


# Forward operators ------------------------------------------------------------

def _cosh2(t):
    return 1.0 / sech(t) ** 2


def prandtl_operator(c0, c1, u, freqs=DEFAULT_FREQS):
    """``c0 u + (c1/pi) (D_G u * 1/y)``: the Prandtl operator times ``1 - x^2``."""
    mid = freqs.midpoints()
    ones = SampledFunction.from_line(np.ones_like, u.grid.midpoints())
    inv_y = forward_pv(ones, mid)
    du = forward(d_g(u, 1, freqs), mid)
    conv = inverse(du.with_values(du.values * inv_y.values), u.grid)
    return u.with_values(c0 * u.values + c1 / np.pi * conv.values)


def tricomi_operator(c0, c1, c2, v0, freqs=DEFAULT_FREQS):
    """``c0 v0 - (c1/pi) (sqrt(1-y^2)/y * v0) + (c2/pi) (sqrt(1-y^2) * v0)``."""
    sech_shifted = SampledFunction.from_line(sech, v0.grid.midpoints())
    odd = forward_pv(sech_shifted, freqs)
    even = forward(SampledFunction.from_line(sech, v0.grid), freqs)
    a = convolve(odd, v0, freqs).values
    b = convolve(even, v0, freqs).values
    return v0.with_values(c0 * v0.values - c1 / np.pi * a + c2 / np.pi * b)


def lb_operator(c0, c1, w, freqs=DEFAULT_FREQS):
    """``c0 w + (c1/pi) ((y - 1/y) * w)``."""
    kernel = SampledFunction.from_line(lambda t: -sech(t) ** 2, w.grid.midpoints())
    conv = convolve(forward_pv(kernel, freqs), w, freqs)
    return w.with_values(c0 * w.values + c1 / np.pi * conv.values)


def ide_operator(spec_or_coeffs, u, freqs=DEFAULT_FREQS):
    """Left-hand side of the integro-differential equation applied to ``u``."""
    s = spec_or_coeffs
    out = np.zeros(u.grid.count, dtype=complex)
    for k, ck in enumerate(s.c):
        if ck != 0:
            out += ck * d_g(u, k, freqs).values
    for dk, mk, nk, kernel in zip(s.d, s.m_k, s.n_k, s.kernels):
        if dk != 0:
            inner = convolve(kernel, d_g(u, nk, freqs), freqs)
            out += dk * d_g(inner, mk, freqs).values
    return u.with_values(out)


# Solvers ----------------------------------------------------------------------

def _solve(symbol, r, rhs0, freqs, eps):
    margin = sym.check_elliptic(symbol, r, eps)
    spec = forward(rhs0, freqs)
    return margin, inverse(spec.with_values(spec.values / symbol(freqs.nodes)), rhs0.grid)


def _run(build):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = build()
    for w in caught:
        warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    report.warnings = sorted({str(w.message) for w in caught})
    return report


def solve_prandtl(spec, freqs=DEFAULT_FREQS, eps=sym.ELLIPTIC_EPS):
    def build():
        f0 = spec.f.with_values(sech(spec.f.t) ** 2 * spec.f.values)
        a = sym.prandtl_symbol(spec.c0, spec.c1)
        margin, u = _solve(a, a.weight_order, f0, freqs, eps)
        return SolveReport("prandtl", u, u, f0, a, margin,
                           diagnostics={"boundary_values": [abs(u.values[0]), abs(u.values[-1])]})
    return _finish(spec, _run(build), freqs)


def solve_tricomi(spec, freqs=DEFAULT_FREQS, eps=sym.ELLIPTIC_EPS):
    def build():
        g0 = spec.g.with_values(sech(spec.g.t) * spec.g.values)
        a = sym.tricomi_symbol(spec.c0, spec.c1, spec.c2)
        margin, v0 = _solve(a, 0.0, g0, freqs, eps)
        v = v0.with_values(v0.values / sech(v0.t))
        dec = sym.invert_tanh_family(spec.c0, spec.c1, spec.c2, np.pi, freqs)
        kernel = inverse(dec.tail_spectrum(freqs), spec.g.grid)
        return SolveReport("tricomi", v, v0, g0, a, margin, decomposition=dec, kernel=kernel)
    return _finish(spec, _run(build), freqs)


def solve_lb(spec, freqs=DEFAULT_FREQS, eps=sym.ELLIPTIC_EPS):
    def build():
        vh = spec.h.with_values(sech(spec.h.t) ** 2 * spec.h.values, "G")
        a = sym.lb_symbol(spec.c0, spec.c1)
        margin, w = _solve(a, 0.0, vh, freqs, eps)
        phi = w.with_values(w.values * _cosh2(w.t), "unit")
        dec = sym.invert_tanh_family(spec.c0, spec.c1, 0.0, 0.5 * np.pi, freqs)
        kernel = inverse(dec.tail_spectrum(freqs), spec.h.grid)
        return SolveReport("lb", phi, w, vh, a, margin, decomposition=dec, kernel=kernel)
    return _finish(spec, _run(build), freqs)


def solve_ide(spec, freqs=DEFAULT_FREQS, eps=sym.ELLIPTIC_EPS):
    def build():
        a = sym.ide_symbol(spec.c, spec.d, spec.m_k, spec.n_k, spec.kernels, freqs, spec.order)
        margin, u = _solve(a, float(spec.order), spec.w, freqs, eps)
        return SolveReport("ide", u, u, spec.w, a, margin)
    return _finish(spec, _run(build), freqs)


SOLVERS = {"prandtl": solve_prandtl, "tricomi": solve_tricomi, "lb": solve_lb, "ide": solve_ide}


def solve(spec, freqs=DEFAULT_FREQS, eps=sym.ELLIPTIC_EPS):
    """Dispatch on ``spec.family``; ``eps`` is the ellipticity threshold."""
    return SOLVERS[spec.family](spec, freqs, eps)


def _finish(spec, report, freqs):
    report.freq_residual, report.space_residual = residual(spec, report, freqs)
    report.diagnostics.update(smoothness_diagnostics(report.weighted))
    return report


# Residuals --------------------------------------------------------------------

def _interior_points():
    return np.linspace(-0.9, 0.9, SPACE_POINTS)


def _evaluator(spectrum):
    """Pointwise inverse transform, memoized since quadrature revisits nodes."""
    evaluate(spectrum, 0.0)  # truncation warning, once
    k = -2j * spectrum.xi
    w = spectrum.freqs.weights * spectrum.values / np.pi
    cache = {}

    def at(t):
        t = float(t)
        if t not in cache:
            cache[t] = complex(np.exp(k * t) @ w)
        return cache[t]
    return at


def _s_over_sinh(s):
    return 1.0 if abs(s) < 1e-8 else s / np.sinh(s)


def _quad_c(func, lo, hi, **kw):
    cache = {}

    def f(t):
        if t not in cache:
            cache[t] = func(t)
        return cache[t]
    re = quad(lambda t: f(t).real, lo, hi, limit=400, **kw)[0]
    im = quad(lambda t: f(t).imag, lo, hi, limit=400, **kw)[0]
    return re + 1j * im


# Both space residuals integrate in the line chart.  With y = tanh(tau) and
# x = tanh(t0), 1/(y - x) = cosh(t0) cosh(tau) / sinh(tau - t0), so the pole
# becomes 1/(tau - t0) times a smooth factor and QAWC handles it directly.

def _prandtl_space(spec, report, freqs):
    # Multiplied form c0 u + (1 - x^2)(c1/pi) PV int u'(y) dy / (x - y) = f0,
    # where u'(y) dy = D_G u(tau) d tau.
    U = forward(report.solution, freqs)
    du = _evaluator(U.with_values(-2j * U.xi * U.values))
    u_at, f0_at = _evaluator(U), _evaluator(forward(report.rhs0, freqs))
    T = report.solution.grid.half_width
    lhs, rhs = [], []
    for x in _interior_points():
        t0 = np.arctanh(x)
        smooth = lambda tau: -du(tau) * np.cosh(t0) * np.cosh(tau) * _s_over_sinh(tau - t0)
        pv = _quad_c(smooth, -T, T, weight="cauchy", wvar=t0)
        lhs.append(spec.c0 * u_at(t0) + (1 - x * x) * spec.c1 / np.pi * pv)
        rhs.append(f0_at(t0))
    return np.array(lhs), np.array(rhs)


def _tricomi_space(spec, report, freqs):
    # Original form in v = v0 / sqrt(1 - x^2); v dy = v0(tau) sech(tau) d tau.
    v0_at = _evaluator(forward(report.weighted, freqs))
    g0_at = _evaluator(forward(report.rhs0, freqs))
    T = report.weighted.grid.half_width
    lhs, rhs = [], []
    for x in _interior_points():
        t0 = np.arctanh(x)
        c = np.cosh(t0)
        smooth = lambda tau: v0_at(tau) * c * _s_over_sinh(tau - t0)
        cauchy = _quad_c(smooth, -T, T, weight="cauchy", wvar=t0)
        regular = _quad_c(lambda tau: v0_at(tau) * sech(tau) / (1.0 - x * np.tanh(tau)), -T, T)
        lhs.append(spec.c0 * v0_at(t0) * c + spec.c1 / np.pi * cauchy + spec.c2 / np.pi * regular)
        rhs.append(g0_at(t0) * c)
    return np.array(lhs), np.array(rhs)


def residual(spec, report, freqs=DEFAULT_FREQS):
    """``(freq_residual, space_residual)`` of a solve.

    ``freq_residual`` is ``max |A U - F| / max |F|`` on the frequency grid.
    ``space_residual`` (Prandtl and Tricomi only) is the relative L2 error of
    the original equation evaluated by adaptive principal-value quadrature at
    33 interior points; ``None`` for the other families.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        U = forward(report.weighted, freqs).values
        F = forward(report.rhs0, freqs).values
    scale = np.max(np.abs(F))
    diff = np.max(np.abs(report.symbol(freqs.nodes) * U - F))
    freq = float(diff / scale) if scale > 0 else float(diff)
    space = None
    if spec.family in ("prandtl", "tricomi"):
        if scale == 0:
            space = 0.0
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                lhs, rhs = (_prandtl_space if spec.family == "prandtl" else _tricomi_space)(spec, report, freqs)
            space = float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))
    return freq, space


# Manufactured problems ----------------------------------------------------------

def manufacture(family, coeffs, solution, freqs=DEFAULT_FREQS):
    """Build a spec whose exact solution is ``solution``.

    ``solution`` is the unknown in the weighted form of the table above
    (``u``, ``v0``, ``w`` or ``u``).  For ``"ide"``, ``coeffs`` is an
    ``IDESpec``-like object whose ``w`` is ignored.
    """
    t = solution.t
    if family == "prandtl":
        f0 = prandtl_operator(coeffs["c0"], coeffs["c1"], solution, freqs)
        return PrandtlSpec(coeffs["c0"], coeffs["c1"], f0.with_values(f0.values * _cosh2(t)))
    if family == "tricomi":
        g0 = tricomi_operator(coeffs["c0"], coeffs["c1"], coeffs["c2"], solution, freqs)
        return TricomiSpec(coeffs["c0"], coeffs["c1"], coeffs["c2"], g0.with_values(g0.values / sech(t)))
    if family == "lb":
        h0 = lb_operator(coeffs["c0"], coeffs["c1"], solution, freqs)
        return LBSpec(coeffs["c0"], coeffs["c1"], h0.with_values(h0.values * _cosh2(t), "unit"))
    if family == "ide":
        w = ide_operator(coeffs, solution, freqs)
        return IDESpec(tuple(coeffs.c), w, tuple(coeffs.d), tuple(coeffs.m_k), tuple(coeffs.n_k),
                       tuple(coeffs.kernels), coeffs.m)
    raise ValueError(f"unknown family {family!r}")
