import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gconv.errors import DegenerateError, TruncationWarning
from gconv.gfourier import (DEFAULT_GRID, FreqGrid, LineGrid, SampledFunction, Spectrum, builtin, forward,
                            forward_pv, inverse, line_transform, parseval_ratio)
from gconv.group import sech

SMALL = FreqGrid(4.0, 65)


def at(spectrum, xi):
    return spectrum.values[np.argmin(np.abs(spectrum.xi - xi))]


def test_grid_validation():
    for bad in (dict(count=100), dict(count=8), dict(count=2 ** 21), dict(half_width=0.5)):
        with pytest.raises(ValueError):
            LineGrid(**bad)
    with pytest.raises(ValueError):
        FreqGrid(8.0, 1024).midpoints()
    g = LineGrid(20.0, 4096)
    assert g.spacing == 40 / 4096 and g.nodes[0] == -20.0
    assert 0.0 not in g.midpoints().nodes
    assert 0.0 not in FreqGrid().midpoints().nodes


def test_sampled_function_shape_checked():
    with pytest.raises(ValueError):
        SampledFunction(DEFAULT_GRID, np.zeros(10))
    with pytest.raises(ValueError):
        SampledFunction(DEFAULT_GRID, np.zeros(4096), chart="polar")


def test_forward_examples():
    assert at(forward(builtin("sech")), 0.0) == pytest.approx(np.pi, rel=1e-12)
    tanh = forward(SampledFunction.from_line(np.tanh))
    # pi i / sinh(pi) from a 30-digit reference evaluation.
    assert at(tanh, 1.0) == pytest.approx(0.272029054982133163j, rel=1e-10)
    assert at(forward(builtin("sech2")), 0.0) == pytest.approx(2.0, rel=1e-12)
    assert np.all(forward(SampledFunction.zeros()).values == 0)


def test_forward_pv_examples():
    mid = DEFAULT_GRID.midpoints()
    inv_y = forward_pv(SampledFunction.from_line(np.ones_like, mid), SMALL)
    odd = forward_pv(SampledFunction.from_line(sech, mid), SMALL)
    assert at(inv_y, 1.0) == pytest.approx(3.15334809493716235j, rel=1e-10)
    assert at(odd, 1.0) == pytest.approx(3.12988103563175857j, rel=1e-8)
    assert abs(at(odd, 0.0)) < 1e-13
    with pytest.raises(ValueError):
        forward_pv(builtin("sech"), SMALL)


def test_inverse_examples():
    spec = Spectrum(FreqGrid(), np.pi * sech(np.pi * FreqGrid().nodes))
    u = inverse(spec)
    assert np.max(np.abs(u.values - sech(u.t))) < 1e-9
    assert np.all(inverse(spec.with_values(np.zeros(spec.xi.size))).values == 0)


@pytest.mark.parametrize("name", ["sech", "sech2", "gauss"])
def test_round_trip(name):
    u = builtin(name)
    back = inverse(forward(u))
    assert np.linalg.norm(back.values - u.values) / np.linalg.norm(u.values) <= 1e-8


def test_truncation_warning_on_short_grid():
    short = LineGrid(4.0, 1024)
    u = SampledFunction.from_line(lambda t: 1 / (1 + t * t), short)
    with pytest.warns(TruncationWarning):
        forward(u, SMALL)


def test_dilation_relation_is_exact():
    u = builtin("sech2")
    assert np.array_equal(forward(u, SMALL).values, line_transform(u, 2 * SMALL.nodes))


def test_linearity():
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
    u, v = builtin("sech"), builtin("gauss")
    w = u.with_values(a * u.values + b * v.values)
    lhs = forward(w, SMALL).values
    rhs = a * forward(u, SMALL).values + b * forward(v, SMALL).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12
    U, V = forward(u), forward(v)
    back = inverse(U.with_values(a * U.values + b * V.values)).values
    assert np.max(np.abs(back - (a * inverse(U).values + b * inverse(V).values))) <= 1e-12


@settings(max_examples=20, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(-2.0, 2.0))
def test_conjugate_symmetry_for_real_samples(width, center):
    u = SampledFunction.from_line(lambda t: np.exp(-((t - center) / width) ** 2))
    s = forward(u, SMALL).values
    assert np.max(np.abs(s[::-1] - np.conj(s))) <= 1e-12


def test_parseval_examples():
    u = builtin("sech")
    assert parseval_ratio(u, u) == pytest.approx(np.pi, abs=1e-10)
    even, odd = builtin("gauss"), SampledFunction.from_line(lambda t: t * np.exp(-t * t))
    with pytest.raises(DegenerateError):
        parseval_ratio(even, odd)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_parseval_random_schwartz(c):
    u = SampledFunction.from_line(lambda t: (1 + c[0] * t + c[1] * t * t) * np.exp(-t * t) + c[2] * sech(t))
    if u.l2() < 1e-3:
        return
    assert parseval_ratio(u, u) == pytest.approx(np.pi, abs=1e-8)


def test_chirp_z_sum_matches_dense_sum():
    from gconv.gfourier import DEFAULT_GRID, _dense_exp_sum, _exp_sum
    rng = np.random.default_rng(1)
    t, k = DEFAULT_GRID.nodes, np.linspace(-16, 16, 1025)
    v = rng.standard_normal(t.size) + 1j * rng.standard_normal(t.size)
    for sign in (1, -1):
        fast, dense = _exp_sum(v, t, k, sign), _dense_exp_sum(v, t, k, sign)
        assert np.max(np.abs(fast - dense)) <= 1e-13 * np.sum(np.abs(v))
