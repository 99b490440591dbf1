"""Numerical Fourier transform on G through the line chart.

With ``x = tanh t`` the transform of a function ``v`` on G becomes

    (F_G v)(xi) = int e^{2 i xi t} phi(t) dt,     phi = v o tanh,

i.e. the ordinary line transform of the pullback evaluated at ``2 xi``.  The
inverse is ``phi(t) = (1/pi) int e^{-2 i xi t} psi(xi) d xi``.  Both integrals
are approximated by uniform-grid quadrature, which converges spectrally for the
analytic, exponentially decaying integrands this package deals with.

Pullbacks that tend to constants at +-inf (``y`` and ``1/y`` pull back to
``tanh t`` and ``coth t``) are handled by removing a smooth ``A + B erf(t)``
step before summation and adding its transform ``i B exp(-xi^2) / xi`` back
analytically.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property
import warnings

import numpy as np
from scipy.fft import fft, ifft, next_fast_len
from scipy.special import erf

from .errors import DegenerateError, TruncationWarning
from .group import sech

TRUNCATION_TOL = 1e-10
GEOMETRIC_TOL = 1e-2
_CHUNK = 1 << 22


@dataclass(frozen=True)
class LineGrid:
    """Uniform grid ``t_j = -T + j h`` (``h = 2T/N``) on the line chart.

    With ``shifted=True`` every node moves by ``h/2``; the grid is then
    symmetric about 0 without containing it, which is what principal-value
    sums need.
    """

    half_width: float = 20.0
    count: int = 4096
    shifted: bool = False

    def __post_init__(self):
        n = int(self.count)
        if n < 16 or n & (n - 1) or n > 1 << 20:
            raise ValueError(f"grid count must be a power of two in [16, 2**20], got {self.count}")
        if not self.half_width >= 1.0:
            raise ValueError(f"half width must be >= 1, got {self.half_width}")
        object.__setattr__(self, "count", n)
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def spacing(self):
        return 2.0 * self.half_width / self.count

    @cached_property
    def nodes(self):
        j = np.arange(self.count) + (0.5 if self.shifted else 0.0)
        return -self.half_width + j * self.spacing

    @property
    def points(self):
        """Nodes mapped to G (rounds to +-1 far out; prefer ``nodes``)."""
        return np.tanh(self.nodes)

    def midpoints(self):
        return replace(self, shifted=True)

    def unshifted(self):
        return replace(self, shifted=False)


@dataclass(frozen=True)
class FreqGrid:
    """Frequencies on ``[-xi_max, xi_max]`` with spacing ``2 xi_max / (count - 1)``.

    The plain grid holds ``count`` nodes including both ends and 0 and is
    integrated with the trapezoidal rule.  The shifted grid holds the
    ``count - 1`` cell midpoints (no node at 0 when ``count`` is odd) and is
    integrated with the midpoint rule.
    """

    xi_max: float = 8.0
    count: int = 1025
    shifted: bool = False

    def __post_init__(self):
        if int(self.count) < 16:
            raise ValueError("frequency grid needs at least 16 points")
        if not self.xi_max > 0:
            raise ValueError("xi_max must be positive")
        if self.shifted and int(self.count) % 2 == 0:
            raise ValueError("a shifted frequency grid needs an odd count to avoid xi = 0")
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "xi_max", float(self.xi_max))

    @property
    def spacing(self):
        return 2.0 * self.xi_max / (self.count - 1)

    @cached_property
    def nodes(self):
        if self.shifted:
            return -self.xi_max + (np.arange(self.count - 1) + 0.5) * self.spacing
        return np.linspace(-self.xi_max, self.xi_max, self.count)

    @cached_property
    def weights(self):
        w = np.full(self.nodes.size, self.spacing)
        if not self.shifted:
            w[0] = w[-1] = 0.5 * self.spacing
        return w

    def midpoints(self):
        return replace(self, shifted=True)


DEFAULT_GRID = LineGrid()
DEFAULT_FREQS = FreqGrid()


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Samples ``values[j]`` of a function at the nodes of ``grid``.

    ``chart`` records intent only: ``"G"`` for ``phi_0(tanh t_j)``, ``"line"``
    for ``phi(t_j)`` (identical arrays under the pullback), ``"unit"`` for
    functions on (0, 1) sampled at ``(1 + tanh t_j) / 2``.
    """

    grid: LineGrid
    values: np.ndarray
    chart: str = "G"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.count,):
            raise ValueError(f"expected {self.grid.count} samples, got shape {values.shape}")
        if self.chart not in ("G", "line", "unit"):
            raise ValueError(f"unknown chart tag {self.chart!r}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_line(cls, func, grid=DEFAULT_GRID, chart="G"):
        """Sample a pullback ``phi(t)`` given as a function of the line coordinate."""
        return cls(grid, func(grid.nodes), chart)

    @classmethod
    def from_group(cls, func, grid=DEFAULT_GRID):
        """Sample ``phi_0(x)`` at ``x = tanh t_j``."""
        return cls(grid, func(grid.points), "G")

    @classmethod
    def zeros(cls, grid=DEFAULT_GRID):
        return cls(grid, np.zeros(grid.count))

    @property
    def t(self):
        return self.grid.nodes

    @property
    def x(self):
        return self.grid.points

    def with_values(self, values, chart=None):
        return SampledFunction(self.grid, values, self.chart if chart is None else chart)

    def l2(self):
        """``||phi | L_2(G, dG)||`` by the trapezoidal rule in ``t``."""
        return float(np.sqrt(self.grid.spacing * np.sum(np.abs(self.values) ** 2)))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Values of a G-Fourier transform on a frequency grid."""

    freqs: FreqGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.freqs.nodes.shape:
            raise ValueError(f"expected {self.freqs.nodes.size} values, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def xi(self):
        return self.freqs.nodes

    def with_values(self, values):
        return Spectrum(self.freqs, values)


BUILTINS = {
    "sech": sech,
    "sech2": lambda t: sech(t) ** 2,
    "gauss": lambda t: np.exp(-np.asarray(t, dtype=float) ** 2),
}


def builtin(name, grid=DEFAULT_GRID, chart="G"):
    """One of the named test functions, sampled through its line pullback."""
    try:
        func = BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
    return SampledFunction.from_line(func, grid, chart)


def _uniform(x):
    if x.size < 16:
        return False
    d = np.diff(x)
    return bool(np.all(np.abs(d - d[0]) <= 1e-9 * abs(d[0])))


def _exp_sum(values, t, k, sign):
    """``sum_j values_j exp(sign * i k t_j)`` for every ``k``.

    Uniform ``t`` and ``k`` go through a chirp-z (Bluestein) convolution;
    other points are summed directly.
    """
    if _uniform(t) and _uniform(k):
        return _chirp_exp_sum(np.asarray(values, dtype=complex), t, k, sign)
    return _dense_exp_sum(values, t, k, sign)


def _chirp_exp_sum(values, t, k, sign):
    # k_m t_j = k_m t_0 + k_0 j h + dk h (m^2 + j^2 - (m - j)^2) / 2.  The chirp
    # phases come from exact integer squares; a complex power w**(n^2/2)
    # loses about 1e-11 at these sizes.
    n, m = t.size, k.size
    h, dk = t[1] - t[0], k[1] - k[0]
    theta = sign * 0.5 * dk * h
    j, i = np.arange(n, dtype=float), np.arange(m, dtype=float)
    size = next_fast_len(n + m - 1)
    x = np.zeros(size, dtype=complex)
    x[:n] = values * np.exp(1j * (sign * k[0] * h * j + theta * j * j))
    r = np.arange(-(n - 1), m)
    chirp = np.zeros(size, dtype=complex)
    chirp[r % size] = np.exp(-1j * theta * r.astype(float) ** 2)
    y = ifft(fft(x) * fft(chirp))[:m]
    return y * np.exp(1j * (theta * i * i + sign * k * t[0]))


def _dense_exp_sum(values, t, k, sign):
    out = np.empty(k.size, dtype=complex)
    step = max(1, _CHUNK // max(t.size, 1))
    for s in range(0, k.size, step):
        out[s:s + step] = np.exp(sign * 1j * np.outer(k[s:s + step], t)) @ values
    return out


def _is_level(end, inner):
    return end != 0.0 and abs(end - inner) <= 1e-8 * abs(end)


def _tail_ratio(v, end, inward):
    """Node-to-node ratio at the end ``end`` if the tail decays exponentially.

    The local rate ``log(v[j] / v[j - 1])`` at the last node is compared
    with the rate ``len(v) / 64`` nodes further in.  Exponential tails, also
    with slowly varying prefactors such as ``t e^{-t}``, keep nearly the
    same rate; power laws do not.
    """
    m = max(2, v.size // 64)
    a, b = v[end], v[end + inward]
    c, d = v[end + m * inward], v[end + (m + 1) * inward]
    if b == 0.0 or d == 0.0 or a == 0.0 or c == 0.0:
        return None
    rate, inner = np.log(a / b), np.log(c / d)
    if rate.real < 0.0 and abs(rate - inner) <= GEOMETRIC_TOL * abs(rate):
        return a / b
    return None


def line_transform(f, k, *, tol=TRUNCATION_TOL, tail="auto"):
    """``int e^{i k t} phi(t) dt`` from the samples of ``f``.

    Parameters
    ----------
    f : SampledFunction
    k : array_like
        Line-chart frequencies.
    tol : float
        End samples below ``tol * max|phi|`` count as decayed.
    tail : {"auto", "none"}
        With ``"auto"`` two kinds of undecayed ends are repaired.  Ends that
        have levelled off to constants ``phi(+-inf)`` get a smooth
        ``A + B erf(t)`` step removed and its transform restored analytically
        (the constant ``A`` only contributes a delta at ``k = 0``, so the
        result there is ``nan``).  Ends that decay geometrically from node to
        node are continued to infinity as a geometric series, which is exact
        for exponential tails under the trapezoidal rule.  Anything else
        raises a ``TruncationWarning``.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    t, v, h = f.grid.nodes, f.values, f.grid.spacing
    scale = np.max(np.abs(v))
    if scale == 0.0:
        return np.zeros(k.size, dtype=complex)
    extra = np.zeros(k.size, dtype=complex)
    if tail == "auto":
        left = v[0] if _is_level(v[0], v[1]) else 0.0
        right = v[-1] if _is_level(v[-1], v[-2]) else 0.0
        if left != 0.0 or right != 0.0:
            level, jump = 0.5 * (right + left), 0.5 * (right - left)
            v = v - level - jump * erf(t)
            with np.errstate(divide="ignore", invalid="ignore"):
                extra += np.where(k != 0.0, 2j * jump * np.exp(-0.25 * k * k) / k, np.nan)
            if level != 0.0:
                extra[k == 0.0] = np.nan
    v = v.astype(complex)
    for end, inward, step in ((-1, -1, h), (0, 1, -h)):
        if abs(v[end]) <= tol * scale:
            continue
        r = _tail_ratio(v, end, inward) if tail == "auto" else None
        if r is None:
            warnings.warn(
                f"samples have not decayed at t = {t[end]:+g} "
                f"(relative magnitude {abs(v[end]) / scale:.1e}); enlarge the grid",
                TruncationWarning, stacklevel=2)
            continue
        q = r * np.exp(1j * k * step)
        extra += h * v[end] * np.exp(1j * k * t[end]) * q / (1.0 - q)
    return h * _exp_sum(v, t, k, +1) + extra


def forward(f, freqs=DEFAULT_FREQS, *, tol=TRUNCATION_TOL, tail="auto"):
    """G-Fourier transform ``int_{-1}^{1} ((1+y)/(1-y))^{i xi} v(y) dy / (1 - y^2)``.

    Computed as the line transform of the pullback at ``2 xi``.
    """
    return Spectrum(freqs, line_transform(f, 2.0 * freqs.nodes, tol=tol, tail=tail))


def forward_pv(numerator, freqs=DEFAULT_FREQS, *, tol=TRUNCATION_TOL):
    """Principal-value transform of ``p(y) / y``.

    ``numerator`` holds the samples of ``p`` on a shifted grid.  The nodes pair
    up as ``+-t`` around the pole, so the symmetric sum is the Cauchy mean
    value of the integral.
    """
    grid = numerator.grid
    if not grid.shifted:
        raise ValueError("principal-value transforms need a shifted (zero-free) grid")
    integrand = numerator.values / np.tanh(grid.nodes)
    return forward(numerator.with_values(integrand), freqs, tol=tol)


def evaluate(spectrum, t, *, tol=TRUNCATION_TOL):
    """``(1/pi) int e^{-2 i xi t} psi(xi) d xi`` at arbitrary line points ``t``."""
    psi = spectrum.values
    if max(abs(psi[0]), abs(psi[-1])) > tol * np.max(np.abs(psi), initial=0.0):
        warnings.warn(
            f"spectrum has not decayed at |xi| = {spectrum.freqs.xi_max:g}; "
            "the inverse is truncated", TruncationWarning, stacklevel=2)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return _exp_sum(spectrum.freqs.weights * psi, 2.0 * spectrum.xi, t, -1) / np.pi


def inverse(spectrum, grid=DEFAULT_GRID, *, tol=TRUNCATION_TOL):
    """Inverse G-Fourier transform sampled on ``grid``."""
    return SampledFunction(grid, evaluate(spectrum, grid.nodes, tol=tol), "G")


def parseval_ratio(phi, psi, freqs=DEFAULT_FREQS):
    """``(F_G phi, F_G psi)_R / (phi, psi)_G``; equals pi for L_2 data."""
    if phi.grid != psi.grid:
        raise ValueError("both functions must live on the same grid")
    inner_g = phi.grid.spacing * np.sum(phi.values * np.conj(psi.values))
    if abs(inner_g) < 1e-12:
        raise DegenerateError(f"(phi, psi)_G = {abs(inner_g):.2e} is too small to normalize by")
    a, b = forward(phi, freqs), forward(psi, freqs)
    inner_r = np.sum(freqs.weights * a.values * np.conj(b.values))
    return float((inner_r / inner_g).real)
