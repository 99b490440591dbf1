import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gconv.errors import DivergentError
from gconv.gfourier import SampledFunction, builtin, forward
from gconv.spaces import (bessel_norm, holder_quotient, lp_norm, smoothness_diagnostics, sobolev_norm,
                          zygmund_norm, zygmund_seminorm)


def bump():
    return SampledFunction.from_line(lambda t: np.where(np.abs(t) < 1, (1 - t ** 2) ** 2, 0.0))


def test_lp_norm_of_sech():
    # int sech^2 dt = 2
    assert abs(lp_norm(builtin("sech"), 2) - np.sqrt(2)) <= 1e-12
    # int sech dt = pi
    assert abs(lp_norm(builtin("sech"), 1) - np.pi) <= 1e-8


def test_lp_norm_of_constant_diverges_except_sup():
    one = SampledFunction.from_line(lambda t: np.ones_like(t))
    with pytest.raises(DivergentError):
        lp_norm(one, 2)
    assert lp_norm(one, np.inf) == 1.0


def test_lp_norm_rejects_p_below_one():
    with pytest.raises(ValueError):
        lp_norm(builtin("sech"), 0.5)


def test_plancherel_against_spectrum():
    u = builtin("gauss")
    spec = forward(u)
    w = spec.freqs.weights
    assert abs(lp_norm(u) ** 2 * np.pi - np.sum(w * np.abs(spec.values) ** 2)) <= 1e-8


def test_sobolev_norm_of_sech():
    u = builtin("sech")
    # ||sech||^2 = 2, ||tanh sech||^2 = 2/3
    assert abs(sobolev_norm(u, 1) - np.sqrt(2 + 2 / 3)) <= 1e-8
    assert sobolev_norm(u, 0) == pytest.approx(lp_norm(u), abs=1e-15)
    with pytest.raises(ValueError):
        sobolev_norm(u, 1.5)


def test_bessel_norm_routes():
    u = builtin("sech")
    assert abs(bessel_norm(u, 0) - lp_norm(u)) <= 1e-15
    spec = forward(u)
    xi, w = spec.xi, spec.freqs.weights
    for s in (1.0, -1.0, 2.0):
        via_spectrum = np.sqrt(np.sum(w * (1 + xi ** 2) ** s * np.abs(spec.values) ** 2) / np.pi)
        assert abs(bessel_norm(u, s) - via_spectrum) <= 1e-7 * via_spectrum


def test_bessel_and_sobolev_norms_are_equivalent():
    for name in ("sech", "sech2", "gauss"):
        u = builtin(name)
        ratio = bessel_norm(u, 1) / sobolev_norm(u, 1)
        assert 0.1 <= ratio <= 10


def test_zygmund_of_zero_is_zero():
    assert zygmund_seminorm(SampledFunction.zeros(), 0.5) == 0.0


@settings(max_examples=10, deadline=None)
@given(st.floats(-5, 5).filter(lambda c: abs(c) > 1e-3))
def test_zygmund_is_homogeneous(c):
    u = builtin("sech")
    assert zygmund_seminorm(u.with_values(c * u.values), 0.5) == pytest.approx(
        abs(c) * zygmund_seminorm(u, 0.5), rel=1e-10)


def test_zygmund_is_comparable_to_holder_quotient():
    u = bump()
    z, h = zygmund_seminorm(u, 0.5), holder_quotient(u, 0.5)
    assert h / 4 <= z <= 4 * h


def test_zygmund_translation_invariant():
    # Shift by whole grid steps so the sampled maxima are comparable.
    h = builtin("sech").grid.spacing
    a = SampledFunction.from_line(lambda t: 1 / np.cosh(t - 100 * h))
    b = SampledFunction.from_line(lambda t: 1 / np.cosh(t + 200 * h))
    assert abs(zygmund_seminorm(a, 0.5) - zygmund_seminorm(b, 0.5)) <= 1e-6


def test_zygmund_norm_adds_sup():
    u = builtin("sech")
    assert zygmund_norm(u, 0.5) == pytest.approx(1.0 + zygmund_seminorm(u, 0.5))


def test_zygmund_rejects_nonpositive_alpha():
    with pytest.raises(ValueError):
        zygmund_seminorm(builtin("sech"), 0.0)


def test_smoothness_diagnostics_keys():
    d = smoothness_diagnostics(builtin("sech"))
    assert d["zygmund_alpha"] == 0.5 and d["zygmund_seminorm"] > 0
