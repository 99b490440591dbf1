"""Convolution operators ``W_a = F_G^{-1} a F_G`` and relatives."""
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import NonDecayingError
from .gfourier import DEFAULT_FREQS, DEFAULT_GRID, TRUNCATION_TOL, Spectrum, evaluate, forward, inverse
from .symbols import BesselWeight, Symbol, as_symbol, coth_symbol, derivative_symbol


@dataclass(frozen=True)
class ConvolutionOperator:
    """``W_a u = F_G^{-1}[a F_G u]``.

    Symbols with poles are applied on the shifted frequency grid, so the
    inverse transform pairs ``+-xi`` around each pole and returns the
    principal value.
    """

    symbol: Symbol
    grid: object = DEFAULT_GRID
    freqs: object = DEFAULT_FREQS

    def __post_init__(self):
        object.__setattr__(self, "symbol", as_symbol(self.symbol))

    @property
    def frequencies(self):
        return self.freqs.midpoints() if self.symbol.poles else self.freqs

    def apply(self, u):
        if u.grid != self.grid:
            raise ValueError("function and operator live on different grids")
        freqs = self.frequencies
        spec = forward(u, freqs)
        out = inverse(spec.with_values(self.symbol(freqs.nodes) * spec.values), self.grid)
        return out.with_values(out.values, u.chart)

    __call__ = apply


def apply(symbol, u, freqs=DEFAULT_FREQS):
    return ConvolutionOperator(symbol, u.grid, freqs).apply(u)


def d_g(u, k=1, freqs=DEFAULT_FREQS):
    """``((1 - x^2) d/dx)^k u`` through the symbol ``(-2 i xi)^k``."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if k == 0:
        return u
    return apply(derivative_symbol(k), u, freqs)


def bessel(s, u, freqs=DEFAULT_FREQS):
    """Bessel potential with symbol ``(1 + xi^2)^{s/2}``."""
    if s == 0:
        return u
    return apply(BesselWeight(s), u, freqs)


def _spectrum_of(k0, freqs):
    if isinstance(k0, Spectrum):
        if k0.freqs != freqs:
            raise ValueError("kernel spectrum is on a different frequency grid")
        return k0.values
    if isinstance(k0, Symbol):
        return k0(freqs.nodes)
    return forward(k0, freqs).values


def convolve(k0, u, freqs=DEFAULT_FREQS):
    """``int k0(x o (-y)) u(y) dG(y)`` via the convolution theorem.

    ``k0`` may be samples, a precomputed ``Spectrum`` or a ``Symbol``.
    """
    spec = forward(u, freqs)
    return inverse(spec.with_values(_spectrum_of(k0, freqs) * spec.values), u.grid)


def boundary_functional(u, tol=TRUNCATION_TOL):
    """``(1/(pi i)) int y u(y) dG(y)``."""
    v = u.values
    if max(abs(v[0]), abs(v[-1])) > tol * max(np.max(np.abs(v)), 1e-300):
        raise NonDecayingError("u must vanish at +-1 for the Cauchy decomposition")
    return complex(u.grid.spacing * np.sum(np.tanh(u.t) * v) / (np.pi * 1j))


def cauchy_singular(u, freqs=DEFAULT_FREQS, tol=TRUNCATION_TOL, at=None):
    """``(1/(pi i)) PV int u(y) dy / (y - x)`` as a convolution minus a constant.

    Returns samples on ``u.grid``, or values at the line points ``at``.

    With ``dy = (1 - y^2) dG(y)`` the kernel splits as
    ``(1 - xy)/(y - x) - y``, and ``(1 - xy)/(y - x) = -1/(x o (-y))`` is a
    convolution kernel with symbol ``-coth(pi xi)``.
    """
    const = boundary_functional(u, tol)
    if at is not None:
        mid = freqs.midpoints()
        spec = forward(u, mid)
        spec = spec.with_values(-coth_symbol()(mid.nodes) * spec.values)
        return evaluate(spec, at) - const
    w = apply(-1.0 * coth_symbol(), u, freqs)
    return w.with_values(w.values - const)


def shift(u, y):
    """``u(x o (-y))``: a plain translation by ``atanh(y)`` in the line chart.

    Resampled by cubic interpolation; values beyond the grid are zero.
    """
    s = float(np.arctanh(y))
    t = u.t
    re, im = CubicSpline(t, u.values.real), CubicSpline(t, u.values.imag)
    src = t - s
    inside = (src >= t[0]) & (src <= t[-1])
    out = np.zeros(t.size, dtype=complex)
    out[inside] = re(src[inside]) + 1j * im(src[inside])
    return u.with_values(out)
