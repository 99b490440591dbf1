"""Symbols of convolution operators on G and tools to inspect them.

A symbol is a function ``a(xi)`` together with a declared weight order ``r``
(growth like ``<xi>^r``, ``<xi> = (1 + xi^2)^{1/2}``).  Every symbol knows its
leading behaviour at ``+-inf`` as a pair ``(coeff, order)`` meaning
``a(xi) ~ coeff |xi|^order``; the ellipticity scan uses it to close the
infimum over the whole line.
"""
from dataclasses import dataclass, field
import numbers

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import NotEllipticError, OrderHypothesisError, PoleError
from .gfourier import DEFAULT_FREQS, Spectrum, forward
from .group import sech

ELLIPTIC_EPS = 1e-10
SCAN_XI_MAX = 8.0
SCAN_COUNT = 20001
SERIES_CUTOFF = 1e-4


def _xi_array(xi):
    return np.asarray(xi, dtype=float)


def _finish(xi, values):
    values = np.asarray(values, dtype=complex)
    if np.ndim(xi) == 0:
        return complex(values.reshape(()))
    return values


def xi_coth(xi):
    """``xi coth(pi xi)``, equal to ``1/pi`` at 0."""
    xi = _xi_array(xi)
    small = np.abs(xi) < SERIES_CUTOFF
    z2 = (np.pi * xi) ** 2
    series = (1.0 + z2 / 3.0 - z2 * z2 / 45.0) / np.pi
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = xi / np.tanh(np.pi * xi)
    return np.where(small, series, direct)


def xi_over_sinh(xi):
    """``2 pi xi / sinh(pi xi)``, equal to 2 at 0."""
    xi = _xi_array(xi)
    z = np.pi * xi
    small = np.abs(xi) < SERIES_CUTOFF
    series = 2.0 * (1.0 - z * z / 6.0 + 7.0 * z ** 4 / 360.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        direct = np.where(np.abs(z) > 700.0, 0.0, 2.0 * z / np.sinh(np.where(np.abs(z) > 700.0, 1.0, z)))
    return np.where(small, series, direct)


class Symbol:
    """Base class.  Subclasses implement ``_eval`` and ``asymptote``."""

    weight_order = 0.0
    poles = ()

    def __call__(self, xi):
        x = _xi_array(xi)
        if self.poles and np.any(np.isin(x, self.poles)):
            bad = x[np.isin(x, self.poles)].ravel()[0]
            raise PoleError(f"{self!r} has a pole at xi = {bad:g}")
        return _finish(xi, self._eval(np.atleast_1d(x)).reshape(x.shape))

    def _eval(self, xi):
        raise NotImplementedError

    def asymptote(self, sign):
        """``(coeff, order)`` with ``a(xi) ~ coeff |xi|^order`` as ``xi -> sign * inf``."""
        raise NotImplementedError

    def limit(self, sign, r=None):
        """``lim |<xi>^{-r} a(xi)|`` as ``xi -> sign * inf``."""
        r = self.weight_order if r is None else r
        coeff, order = self.asymptote(sign)
        if coeff == 0:
            return 0.0
        if np.isclose(order, r, rtol=0, atol=1e-12):
            return float(abs(coeff))
        return float("inf") if order > r else 0.0

    def inverse(self):
        return Inverse(self)

    def __add__(self, other):
        return Sum((self, as_symbol(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_symbol(other))

    def __rsub__(self, other):
        return as_symbol(other) + (-self)

    def __mul__(self, other):
        return Product((self, as_symbol(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Product((Constant(-1.0), self))


def as_symbol(value):
    if isinstance(value, Symbol):
        return value
    if isinstance(value, numbers.Number):
        return Constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a symbol")


@dataclass(frozen=True, repr=False)
class Constant(Symbol):
    value: complex

    def _eval(self, xi):
        return np.full(xi.shape, complex(self.value))

    def asymptote(self, sign):
        return complex(self.value), 0.0

    def __repr__(self):
        return f"Constant({self.value})"


@dataclass(frozen=True, repr=False)
class Polynomial(Symbol):
    """``sum_k coeffs[k] (-2 i xi)^k``, the symbol of ``sum_k c_k D_G^k``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def degree(self):
        nz = [k for k, c in enumerate(self.coeffs) if c != 0]
        return nz[-1] if nz else 0

    @property
    def weight_order(self):
        return float(self.degree)

    def _eval(self, xi):
        z = -2j * xi
        out = np.zeros(xi.shape, dtype=complex)
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def asymptote(self, sign):
        n = self.degree
        c = self.coeffs[n] if self.coeffs else 0.0
        return c * (-2j * sign) ** n, float(n)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"


@dataclass(frozen=True, repr=False)
class TanhFamily(Symbol):
    """``c0 - i c1 tanh(h xi) + c2 / cosh(h xi)``."""

    c0: complex
    c1: complex = 0.0
    c2: complex = 0.0
    h: float = np.pi

    def _eval(self, xi):
        hx = self.h * xi
        return self.c0 - 1j * self.c1 * np.tanh(hx) + self.c2 * sech(hx)

    def asymptote(self, sign):
        if self.h == 0:
            return complex(self.c0 + self.c2), 0.0
        return complex(self.c0 - 1j * self.c1 * sign * np.sign(self.h)), 0.0

    def __repr__(self):
        return f"TanhFamily(c0={self.c0}, c1={self.c1}, c2={self.c2}, h={self.h:g})"


@dataclass(frozen=True, repr=False)
class XiCoth(Symbol):
    """``c0 + 2 c1 xi coth(pi xi)``; smooth, grows like ``2 c1 |xi|``."""

    c0: complex
    c1: complex

    @property
    def weight_order(self):
        return 1.0 if self.c1 != 0 else 0.0

    def _eval(self, xi):
        return self.c0 + 2.0 * self.c1 * xi_coth(xi)

    def asymptote(self, sign):
        if self.c1 != 0:
            return 2.0 * complex(self.c1), 1.0
        return complex(self.c0), 0.0

    def __repr__(self):
        return f"XiCoth(c0={self.c0}, c1={self.c1})"


@dataclass(frozen=True, repr=False)
class BesselWeight(Symbol):
    """``<xi>^s = (1 + xi^2)^{s/2}``."""

    s: float

    @property
    def weight_order(self):
        return float(self.s)

    def _eval(self, xi):
        return (1.0 + xi * xi) ** (0.5 * self.s) + 0j

    def asymptote(self, sign):
        return 1.0, float(self.s)

    def __repr__(self):
        return f"BesselWeight({self.s:g})"


@dataclass(frozen=True, repr=False)
class Closed(Symbol):
    """A closed-form symbol given by a vectorized function."""

    func: object
    name: str
    limits: tuple = (0.0, 0.0)
    order: float = 0.0
    poles: tuple = ()

    @property
    def weight_order(self):
        return self.order

    def _eval(self, xi):
        return np.asarray(self.func(xi), dtype=complex)

    def asymptote(self, sign):
        return self.limits[0 if sign < 0 else 1], self.order

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class KernelTransform(Symbol):
    """A tabulated transform, cubic-interpolated and zero outside its grid."""

    spectrum: Spectrum = field(repr=False)

    def __post_init__(self):
        xi, v = self.spectrum.xi, self.spectrum.values
        object.__setattr__(self, "_re", CubicSpline(xi, v.real))
        object.__setattr__(self, "_im", CubicSpline(xi, v.imag))

    def _eval(self, xi):
        inside = np.abs(xi) <= self.spectrum.freqs.xi_max
        out = np.zeros(xi.shape, dtype=complex)
        out[inside] = self._re(xi[inside]) + 1j * self._im(xi[inside])
        return out

    def asymptote(self, sign):
        return 0.0, 0.0

    def __repr__(self):
        return "KernelTransform(...)"


@dataclass(frozen=True, repr=False)
class Sum(Symbol):
    terms: tuple

    @property
    def weight_order(self):
        return max(t.weight_order for t in self.terms)

    @property
    def poles(self):
        return tuple(sorted({p for t in self.terms for p in t.poles}))

    def _eval(self, xi):
        return sum(t._eval(xi) for t in self.terms)

    def asymptote(self, sign):
        parts = [t.asymptote(sign) for t in self.terms]
        parts = [(c, o) for c, o in parts if c != 0]
        if not parts:
            return 0.0, 0.0
        top = max(o for _, o in parts)
        return sum(c for c, o in parts if o == top), top

    def __repr__(self):
        return " + ".join(map(repr, self.terms))


@dataclass(frozen=True, repr=False)
class Product(Symbol):
    factors: tuple

    @property
    def weight_order(self):
        return sum(f.weight_order for f in self.factors)

    @property
    def poles(self):
        return tuple(sorted({p for f in self.factors for p in f.poles}))

    def _eval(self, xi):
        out = np.ones(xi.shape, dtype=complex)
        for f in self.factors:
            out = out * f._eval(xi)
        return out

    def asymptote(self, sign):
        coeff, order = 1.0 + 0j, 0.0
        for f in self.factors:
            c, o = f.asymptote(sign)
            coeff, order = coeff * c, order + o
        return coeff, order

    def __repr__(self):
        return " * ".join(f"({f!r})" for f in self.factors)


@dataclass(frozen=True, repr=False)
class Inverse(Symbol):
    base: Symbol

    @property
    def weight_order(self):
        return -self.base.weight_order

    def _eval(self, xi):
        return 1.0 / self.base._eval(xi)

    def asymptote(self, sign):
        c, o = self.base.asymptote(sign)
        return (1.0 / c if c != 0 else np.inf), -o

    def inverse(self):
        return self.base

    def __repr__(self):
        return f"1 / ({self.base!r})"


# Symbol catalogue -----------------------------------------------------------

def prandtl_symbol(c0, c1):
    return XiCoth(c0, c1)


def tricomi_symbol(c0, c1, c2):
    return TanhFamily(c0, c1, c2, np.pi)


def lb_symbol(c0, c1):
    return TanhFamily(c0, c1, 0.0, 0.5 * np.pi)


def derivative_symbol(k=1):
    """Symbol ``(-2 i xi)^k`` of the k-th invariant derivative."""
    return Polynomial((0.0,) * k + (1.0,))


def coth_symbol(scale=np.pi):
    """``coth(scale * xi)``; pole at 0."""
    return Closed(lambda xi: 1.0 / np.tanh(scale * xi), f"coth({scale:g} xi)", (-1.0, 1.0), 0.0, (0.0,))


def tanh_symbol(scale=np.pi):
    return Closed(lambda xi: np.tanh(scale * xi), f"tanh({scale:g} xi)", (-1.0, 1.0))


# Transforms of the elementary functions of y; the 1/y and y entries are
# singular at xi = 0.
PAIRS = {
    "inv_y": Closed(lambda xi: 1j * np.pi / np.tanh(np.pi * xi), "pi i coth(pi xi)",
                    (-1j * np.pi, 1j * np.pi), 0.0, (0.0,)),
    "sqrt": Closed(lambda xi: np.pi * sech(np.pi * xi), "pi / cosh(pi xi)"),
    "sqrt_over_y": Closed(lambda xi: 1j * np.pi * np.tanh(np.pi * xi), "pi i tanh(pi xi)",
                          (-1j * np.pi, 1j * np.pi)),
    "y": Closed(lambda xi: 1j * np.pi / np.sinh(np.pi * xi), "pi i / sinh(pi xi)", poles=(0.0,)),
    "one_minus_y2": Closed(xi_over_sinh, "2 pi xi / sinh(pi xi)"),
}


# Ellipticity -----------------------------------------------------------------

def _scan(a, r, xi_max, count):
    xi = np.linspace(-xi_max, xi_max, count)
    keep = ~np.isin(xi, a.poles)
    xi = xi[keep]
    vals = np.abs(a(xi)) * (1.0 + xi * xi) ** (-0.5 * r)
    return xi, vals


def infimum(a, r=None, *, xi_max=SCAN_XI_MAX, count=SCAN_COUNT):
    """Estimated ``inf |<xi>^{-r} a(xi)|`` and where it is attained.

    The scan covers ``[-xi_max, xi_max]``; the limits at ``+-inf`` come from
    the symbol's declared asymptotics.  For tabulated symbols this is a
    heuristic.
    """
    r = a.weight_order if r is None else r
    xi, vals = _scan(a, r, xi_max, count)
    j = int(np.nanargmin(vals))
    best, where = float(vals[j]), float(xi[j])
    for sign in (-1, 1):
        lim = a.limit(sign, r)
        if lim < best:
            best, where = lim, sign * np.inf
    return best, where


def ellipticity_margin(a, r=None, **kw):
    return infimum(a, r, **kw)[0]


def check_elliptic(a, r=None, eps=ELLIPTIC_EPS, **kw):
    """Return the margin, or raise ``NotEllipticError`` if it is ``<= eps``."""
    margin, where = infimum(a, r, **kw)
    if not margin > eps:
        raise NotEllipticError(margin, where)
    return margin


# Inversion of the tanh family -------------------------------------------------

@dataclass(frozen=True)
class InverseDecomposition:
    """``1 / a(xi) = d0 - d1 tanh(h xi) + tail(xi)`` with an exponentially small tail."""

    c0: complex
    c1: complex
    c2: complex
    h: float
    d0: complex
    d1: complex
    xi: np.ndarray = field(repr=False)
    tail: np.ndarray = field(repr=False)

    def tail_at(self, xi):
        # Splitting 1/a into 1/b with b = c0 - i c1 tanh and the c2 correction
        # keeps every term proportional to sech(h xi), so nothing cancels.
        xi = _xi_array(xi)
        th, sh = np.tanh(self.h * xi), sech(self.h * xi)
        b = self.c0 - 1j * self.c1 * th
        a = b + self.c2 * sh
        pq = (self.c0 + 1j * self.c1) * (self.c0 - 1j * self.c1)
        return self.c1 ** 2 * sh * sh / (pq * b) - self.c2 * sh / (a * b)

    def inverse_at(self, xi):
        xi = _xi_array(xi)
        return self.d0 - self.d1 * np.tanh(self.h * xi) + self.tail_at(xi)

    def symbol(self):
        return TanhFamily(self.c0, self.c1, self.c2, self.h)

    def tail_spectrum(self, freqs):
        return Spectrum(freqs, self.tail_at(freqs.nodes))

    def tail_slope(self, lo=2.0, hi=6.0):
        """Slope of ``log|tail|`` against ``|xi|`` over ``lo <= |xi| <= hi``."""
        m = (np.abs(self.xi) >= lo) & (np.abs(self.xi) <= hi)
        mag = np.abs(self.tail[m])
        if np.any(mag == 0):
            return -np.inf
        return float(np.polyfit(np.abs(self.xi[m]), np.log(mag), 1)[0])


def invert_tanh_family(c0, c1=0.0, c2=0.0, h=np.pi, freqs=DEFAULT_FREQS):
    """Split ``1 / (c0 - i c1 tanh(h xi) + c2 sech(h xi))`` into tanh part and tail."""
    a = TanhFamily(c0, c1, c2, h)
    check_elliptic(a, 0.0)
    p, q = complex(c0 + 1j * c1), complex(c0 - 1j * c1)
    d0 = 0.5 * (1.0 / p + 1.0 / q)
    d1 = 0.5 * (1.0 / p - 1.0 / q)
    out = InverseDecomposition(complex(c0), complex(c1), complex(c2), float(h), d0, d1,
                               freqs.nodes, np.empty(0))
    object.__setattr__(out, "tail", out.tail_at(freqs.nodes))
    return out


# Multiplier diagnostics -------------------------------------------------------

@dataclass(frozen=True)
class MultiplierReport:
    margin: float
    tv: float
    M0: float
    M1: float
    verdict: str
    weight_order: float

    def to_dict(self):
        return {"margin": self.margin, "tv": self.tv, "M0": self.M0, "M1": self.M1,
                "verdict": self.verdict, "weight_order": self.weight_order}


def _mikhlin(a, r, xi_max, count):
    # Cell midpoints: symmetric, never exactly 0, so poles there are sampled
    # ever closer under refinement instead of being hit.
    dx = 2.0 * xi_max / (count - 1)
    xi = -xi_max + (np.arange(count - 1) + 0.5) * dx
    w = (1.0 + xi * xi) ** (-0.5 * r)
    b = a(xi) * w
    step = 1e-6 * np.maximum(1.0, np.abs(xi))
    deriv = (a(xi + step) - a(xi - step)) / (2.0 * step)
    return (float(np.sum(np.abs(np.diff(b)))), float(np.max(np.abs(b))),
            float(np.max(np.abs(xi * deriv) * w)))


def multiplier_diagnostics(a, r=None, *, xi_max=SCAN_XI_MAX, count=SCAN_COUNT):
    """Numerical bounded-variation and Mikhlin-type certificate for ``a``.

    Quantities are computed on a scan grid and again after halving its
    spacing.  Stable values give the verdict ``"multiplier"``; a quantity
    growing by more than half under refinement gives ``"not a multiplier"``;
    anything in between is ``"inconclusive"``.
    """
    r = a.weight_order if r is None else r
    coarse = _mikhlin(a, r, xi_max, count)
    fine = _mikhlin(a, r, xi_max, 2 * count - 1)
    growth = [abs(f - c) / max(abs(c), 1e-300) if abs(f - c) > 1e-12 else 0.0
              for c, f in zip(coarse, fine)]
    finite = all(np.isfinite(fine))
    if not finite or max(growth) > 0.5:
        verdict = "not a multiplier"
    elif max(growth) <= 1e-2:
        verdict = "multiplier"
    else:
        verdict = "inconclusive"
    margin = ellipticity_margin(a, r, xi_max=xi_max, count=count) if not a.poles else float("nan")
    tv, m0, m1 = fine
    return MultiplierReport(margin, tv, m0, m1, verdict, float(r))


# Integro-differential symbols -------------------------------------------------

def ide_symbol(c, d=(), m_k=(), n_k=(), kernels=(), freqs=DEFAULT_FREQS, m=None):
    """Symbol ``sum_k c_k (-2i xi)^k + d_k (-2i xi)^{m_k+n_k} F_G(K_k)(xi)``.

    ``m`` defaults to ``len(c) - 1``.  Kernel transforms are tabulated on
    ``freqs`` and interpolated in between.
    """
    c = tuple(c) or (0.0,)
    m = len(c) - 1 if m is None else int(m)
    if not (len(d) == len(m_k) == len(n_k) == len(kernels)):
        raise ValueError("d, m_k, n_k and kernels must have equal lengths")
    for k, (mk, nk) in enumerate(zip(m_k, n_k)):
        if mk < 0 or nk < 0 or mk + nk > m:
            raise OrderHypothesisError(
                f"order hypothesis violated: term {k} has m_k + n_k = {mk + nk} > m = {m}")
    terms = [Polynomial(c)]
    for dk, mk, nk, kernel in zip(d, m_k, n_k, kernels):
        if dk == 0:
            continue
        power = Polynomial((0.0,) * (mk + nk) + (complex(dk),))
        terms.append(Product((power, KernelTransform(forward(kernel, freqs)))))
    return IDESymbol(tuple(terms), m)


@dataclass(frozen=True, repr=False)
class IDESymbol(Sum):
    order: int = 0

    @property
    def weight_order(self):
        return float(self.order)
