"""The Lie group G = (-1, 1) with ``x o y = (x + y) / (1 + x y)``.

The chart ``t = atanh(x)`` is a group isomorphism onto (R, +); the Haar measure
``dx / (1 - x^2)`` pulls back to ``dt``.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import BoundaryError

BOUNDARY_EPS = 1e-15


@dataclass(frozen=True)
class GroupPoint:
    """A point of G, kept at least ``BOUNDARY_EPS`` away from +-1."""

    x: float

    def __post_init__(self):
        x = float(self.x)
        if not np.isfinite(x) or abs(x) > 1.0 - BOUNDARY_EPS:
            raise BoundaryError(f"{x!r} is outside the representable band of (-1, 1)")
        object.__setattr__(self, "x", x)

    def __float__(self):
        return self.x

    def __neg__(self):
        return GroupPoint(-self.x)


@dataclass(frozen=True)
class LinePoint:
    """A finite coordinate in the line chart."""

    t: float

    def __post_init__(self):
        t = float(self.t)
        if not np.isfinite(t):
            raise ValueError("line coordinate must be finite")
        object.__setattr__(self, "t", t)

    def __float__(self):
        return self.t


def _as_x(p):
    return p.x if isinstance(p, GroupPoint) else float(GroupPoint(p))


def compose(a, b):
    """Group product ``(a + b) / (1 + a b)``."""
    x, y = _as_x(a), _as_x(b)
    return GroupPoint((x + y) / (1.0 + x * y))


def inverse(a):
    return GroupPoint(-_as_x(a))


def to_line(p):
    """``t(x) = (1/2) log((1 + x) / (1 - x))``."""
    return LinePoint(np.arctanh(_as_x(p)))


def from_line(q):
    t = q.t if isinstance(q, LinePoint) else float(LinePoint(q))
    return GroupPoint(np.tanh(t))


def haar_weight(p):
    """Density of the invariant measure, ``1 / (1 - x^2)``."""
    x = _as_x(p)
    return 1.0 / ((1.0 - x) * (1.0 + x))


def character(p, xi):
    """``((1 + x) / (1 - x))^{i xi}``, evaluated as ``exp(2 i xi t(x))``."""
    t = np.arctanh(_as_x(p))
    return np.exp(2j * xi * t)


# Vectorized helpers working in the line chart.  They keep 1 - x and 1 + x
# accurate for |t| large, where tanh(t) rounds to +-1.

def one_minus(t):
    """``1 - tanh(t)`` without cancellation."""
    return 2.0 * expit(-2.0 * np.asarray(t, dtype=float))


def one_plus(t):
    """``1 + tanh(t)`` without cancellation."""
    return 2.0 * expit(2.0 * np.asarray(t, dtype=float))


def sech(t):
    t = np.abs(np.asarray(t, dtype=float))
    e = np.exp(-t)
    return 2.0 * e / (1.0 + e * e)
