import numpy as np
import pytest
from hypothesis import given, strategies as st

from gconv.errors import BoundaryError
from gconv.group import (BOUNDARY_EPS, GroupPoint, LinePoint, character, compose, from_line, haar_weight,
                         inverse, one_minus, one_plus, sech, to_line)

interior = st.floats(-0.999, 0.999)


@pytest.mark.parametrize("a, b, expected", [(0.0, 0.3, 0.3), (0.4, -0.4, 0.0), (0.5, 0.5, 0.8)])
def test_compose_examples(a, b, expected):
    assert compose(a, b).x == pytest.approx(expected, abs=1e-16)


def test_rejects_points_outside_band():
    for bad in (1.0, -1.0, 1.5, np.nan, np.inf):
        with pytest.raises(BoundaryError):
            GroupPoint(bad)
    with pytest.raises(ValueError):
        LinePoint(np.inf)


def test_compose_overflow_is_boundary_error():
    # Each point is representable but their product rounds to 1.
    with pytest.raises(BoundaryError):
        compose(1 - 1e-12, 1 - 1e-12)


def test_chart_maps():
    assert to_line(0.0).t == 0.0
    assert from_line(to_line(0.9)).x == pytest.approx(0.9, abs=1e-15)
    # tanh(1) from a 30-digit reference evaluation.
    assert from_line(1.0).x == pytest.approx(0.761594155955764888, abs=1e-16)
    assert inverse(0.3).x == -0.3


def test_haar_weight():
    assert haar_weight(0.0) == 1.0
    assert haar_weight(0.5) == pytest.approx(4 / 3, rel=1e-15)
    edge = haar_weight(1 - 2 * BOUNDARY_EPS)
    assert np.isfinite(edge) and edge > 1e14


def test_character_examples():
    assert character(0.0, 2.7) == 1.0
    assert character(0.6, 0.0) == 1.0
    lhs = character(compose(0.3, 0.5), 1.2)
    assert abs(lhs - character(0.3, 1.2) * character(0.5, 1.2)) <= 1e-14


@given(interior, interior, interior)
def test_associativity(a, b, c):
    left = compose(compose(a, b), c).x
    right = compose(a, compose(b, c)).x
    assert abs(left - right) <= 1e-14


@given(st.floats(-1 + 1e-12, 1 - 1e-12), st.floats(-1 + 1e-12, 1 - 1e-12))
def test_chart_is_homomorphism(x, y):
    try:
        z = compose(x, y).x
    except BoundaryError:
        return
    # One rounding of z moves t by about eps / (1 - z^2); beyond that the
    # chart must turn the product into a sum.
    tol = 1e-12 + 4e-16 / ((1 - z) * (1 + z))
    assert abs(to_line(z).t - (to_line(x).t + to_line(y).t)) <= tol


@given(interior, st.floats(-50, 50))
def test_character_unimodular(x, xi):
    assert abs(abs(character(x, xi)) - 1.0) <= 1e-14


@given(st.floats(-0.9, 0.9), st.floats(-0.9, 0.9))
def test_measure_invariance(x, y):
    step = 1e-6
    jac = (compose(x + step, y).x - compose(x - step, y).x) / (2 * step)
    assert jac * haar_weight(compose(x, y)) == pytest.approx(haar_weight(x), rel=1e-8)


def test_stable_helpers():
    t = np.array([-40.0, -1.0, 0.0, 2.0, 40.0])
    assert np.allclose(one_minus(t[1:4]), 1 - np.tanh(t[1:4]), rtol=1e-15)
    assert one_minus(40.0) == pytest.approx(2 * np.exp(-80), rel=1e-12)
    assert one_plus(-40.0) == pytest.approx(2 * np.exp(-80), rel=1e-12)
    assert np.allclose(sech(t), 1 / np.cosh(t), rtol=1e-15)
