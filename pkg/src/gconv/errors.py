"""Exceptions and warnings raised across the package."""


class BoundaryError(ValueError):
    """A group point is too close to the boundary of (-1, 1)."""


class TruncationWarning(UserWarning):
    """Samples have not decayed at the ends of a truncated grid."""


class NonDecayingError(ValueError):
    """A function that must decay at the grid ends does not."""


class DegenerateError(ValueError):
    """A quantity used as a denominator is numerically zero."""


class PoleError(ValueError):
    """A symbol was evaluated exactly at one of its poles."""


class DivergentError(ValueError):
    """A weighted Lebesgue norm does not converge on the grid."""


class OrderHypothesisError(ValueError):
    """Integro-differential orders violate ``m_k + n_k <= m``."""


class NotEllipticError(ValueError):
    """The symbol has (numerically) vanishing weighted infimum.

    Attributes
    ----------
    margin : float
        Estimated ``inf |<xi>^{-r} a(xi)|``.
    xi : float
        Frequency at which the infimum was attained (may be ``+-inf``).
    """

    def __init__(self, margin, xi, message=None):
        self.margin = float(margin)
        self.xi = float(xi)
        if message is None:
            message = f"symbol is not elliptic: margin {self.margin:.3e} attained near xi = {self.xi:.6g}"
        super().__init__(message)
