"""Norms of the function spaces on G, computed in the line chart.

Under ``x = tanh t`` the measure ``dx / (1 - x^2)`` becomes ``dt``, so the
weighted Lebesgue norms are plain line integrals of the pullback.
"""
import numpy as np

from .errors import DivergentError
from .operators import bessel, d_g

DIVERGENCE_GROWTH = 0.01
ZYGMUND_Y = np.geomspace(1e-3, 10.0, 64)
PAD = 4


def _check_p(p):
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")


def lp_norm(u, p=2):
    """``(int |phi|^p dG)^{1/p}``; ``p = inf`` gives ``max |phi|``.

    Raises ``DivergentError`` when the integral over ``[-T, T]`` exceeds the
    one over ``[-T/2, T/2]`` by more than 1 %, i.e. the integrand does not
    decay.
    """
    _check_p(p)
    a = np.abs(u.values)
    if np.isinf(p):
        return float(np.max(a))
    h = u.grid.spacing
    full = h * np.sum(a ** p)
    inner = np.abs(u.t) <= 0.5 * u.grid.half_width
    half = h * np.sum(a[inner] ** p)
    if full > 0 and (half == 0 or full > (1.0 + DIVERGENCE_GROWTH) * half):
        raise DivergentError(f"L_{p}(G) integral keeps growing with the grid ({half:.3g} -> {full:.3g})")
    return float(full ** (1.0 / p))


def sobolev_norm(u, m, p=2):
    """``(sum_{k<=m} ||D_G^k u||_p^p)^{1/p}``."""
    if int(m) != m or m < 0:
        raise ValueError("m must be a non-negative integer")
    norms = [lp_norm(d_g(u, k), p) for k in range(int(m) + 1)]
    if np.isinf(p):
        return max(norms)
    return float(np.sum(np.power(norms, p)) ** (1.0 / p))


def bessel_norm(u, s, p=2):
    """``||Lambda^s u||_p`` with ``Lambda^s`` the symbol ``<xi>^s``."""
    return lp_norm(bessel(s, u), p)


def _poisson_derivatives(u, k, ys):
    # Zero padding keeps the periodic FFT from wrapping the Poisson tails
    # around the grid.
    n = u.grid.count
    padded = np.zeros(PAD * n, dtype=complex)
    padded[:n] = u.values
    spec = np.fft.fft(padded)
    freq = np.abs(2.0 * np.pi * np.fft.fftfreq(PAD * n, d=u.grid.spacing))
    for y in ys:
        yield y, np.fft.ifft(spec * (-freq) ** k * np.exp(-freq * y))[:n]


def zygmund_seminorm(u, alpha, ys=ZYGMUND_Y):
    """``sup_y y^{k - alpha} max_t |d^k/dy^k (P_y * phi)(t)|`` with ``k = [alpha] + 1``.

    ``P_y`` is the Poisson kernel of the line chart (symbol ``exp(-|k| y)``);
    the supremum over ``y`` is taken over ``ys``.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    k = int(np.floor(alpha)) + 1
    best = 0.0
    for y, d in _poisson_derivatives(u, k, ys):
        best = max(best, y ** (k - alpha) * float(np.max(np.abs(d))))
    return best


def zygmund_norm(u, alpha, p=np.inf, ys=ZYGMUND_Y):
    return lp_norm(u, p) + zygmund_seminorm(u, alpha, ys)


def holder_quotient(u, alpha, count=200):
    """Brute-force ``sup |phi(a) - phi(b)| / |a - b|^alpha`` over ``count`` nodes."""
    idx = np.linspace(0, u.grid.count - 1, count).round().astype(int)
    t, v = u.t[idx], u.values[idx]
    dt = np.abs(t[:, None] - t[None, :])
    dv = np.abs(v[:, None] - v[None, :])
    np.fill_diagonal(dt, 1.0)
    return float(np.max(dv / dt ** alpha))


def smoothness_diagnostics(u, alpha=0.5):
    """Informative Zygmund seminorm of a solution (no pass/fail)."""
    return {"zygmund_alpha": alpha, "zygmund_seminorm": zygmund_seminorm(u, alpha)}

