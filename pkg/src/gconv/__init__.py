"""Harmonic analysis and convolution equations on the group G = (-1, 1)."""
__version__ = "0.1.0"

from .errors import (BoundaryError, DegenerateError, DivergentError, NonDecayingError, NotEllipticError,
                     OrderHypothesisError, PoleError, TruncationWarning)
from .group import GroupPoint, LinePoint, character, compose, from_line, haar_weight, inverse, to_line
from .gfourier import (DEFAULT_FREQS, DEFAULT_GRID, FreqGrid, LineGrid, SampledFunction, Spectrum, builtin,
                       forward, forward_pv, parseval_ratio)
from .gfourier import inverse as inverse_transform
from .symbols import (ellipticity_margin, ide_symbol, invert_tanh_family, lb_symbol, multiplier_diagnostics,
                      prandtl_symbol, tricomi_symbol)
from .operators import ConvolutionOperator, bessel, cauchy_singular, convolve, d_g, shift
from .equations import (IDESpec, LBSpec, PrandtlSpec, SolveReport, TricomiSpec, residual, solve, solve_ide,
                        solve_lb, solve_prandtl, solve_tricomi)
from .spaces import bessel_norm, lp_norm, sobolev_norm, zygmund_norm, zygmund_seminorm
