import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gconv import symbols as sym
from gconv.errors import NotEllipticError, OrderHypothesisError, PoleError
from gconv.gfourier import FreqGrid, builtin

XI = np.linspace(-8, 8, 1025)


def test_prandtl_values():
    a = sym.prandtl_symbol(1.0, 1.0)
    assert a(0.0) == pytest.approx(1 + 2 / np.pi, rel=1e-15)
    # 1 + 4 coth(2 pi) from a 30-digit reference evaluation.
    assert a(2.0) == pytest.approx(5.00002789883614246, rel=1e-15)
    assert a.weight_order == 1.0
    assert sym.prandtl_symbol(1.0, 0.0).weight_order == 0.0


@pytest.mark.parametrize("xi", [0.0, 1e-12, -3e-5, 9.9e-5, 1.01e-4, -2e-3])
def test_xi_coth_near_zero(xi):
    # Series through xi^6 is exact to rounding for |xi| <= 2e-3.
    z = np.pi * xi
    reference = (1 + z * z / 3 - z ** 4 / 45 + 2 * z ** 6 / 945) / np.pi
    assert sym.xi_coth(xi) == pytest.approx(reference, rel=1e-14)


def test_xi_coth_away_from_zero():
    # 0.3 coth(0.3 pi) from a 30-digit reference evaluation.
    assert sym.xi_coth(0.3) == pytest.approx(0.407410194159493183, rel=1e-15)


def test_xi_over_sinh_limit_and_tail():
    assert sym.xi_over_sinh(0.0) == 2.0
    assert sym.xi_over_sinh(1e-5) == pytest.approx(2.0, rel=1e-9)
    assert sym.xi_over_sinh(1000.0) == 0.0


def test_tricomi_and_lb_values():
    assert sym.tricomi_symbol(1.5, 2.0, 0.7)(0.0) == pytest.approx(2.2)
    assert sym.lb_symbol(1.0, 1.0)(50.0) == pytest.approx(1 - 1j, abs=1e-15)
    assert sym.lb_symbol(1.0, 1.0).asymptote(1) == (1 - 1j, 0.0)


def test_coth_pole():
    c = sym.coth_symbol()
    with pytest.raises(PoleError):
        c(0.0)
    with pytest.raises(PoleError):
        c(np.array([1.0, 0.0]))
    assert c(1.0) == pytest.approx(1 / np.tanh(np.pi))


def test_arithmetic_and_orders():
    a = sym.prandtl_symbol(1.0, 1.0)
    b = sym.BesselWeight(2.0)
    assert (a * b).weight_order == 3.0
    assert (a + b).weight_order == 2.0
    assert (a * b).inverse().weight_order == -3.0
    assert np.allclose((a * b)(XI), a(XI) * (1 + XI ** 2))
    assert np.allclose((2 - a)(XI), 2 - a(XI))
    assert np.allclose(a.inverse()(XI), 1 / a(XI))


@pytest.mark.parametrize("a, r, expected", [
    (sym.Constant(1.0), 0, 1.0),
    (sym.TanhFamily(2.0, 1.0, 0.0), 0, 2.0),
    (sym.TanhFamily(0.0, 1.0, 0.0), 0, 0.0),
    (sym.BesselWeight(1.0), 1, 1.0),
    (sym.Polynomial((1.0, 1.0)), 1, 1.0),
])
def test_ellipticity_margin(a, r, expected):
    assert sym.ellipticity_margin(a, r) == pytest.approx(expected, abs=1e-12)


def test_margin_uses_limits_at_infinity():
    # |1 - 0.5 tanh| decreases towards 1/2 as xi -> +inf; the scan alone sees a bit more.
    a = sym.TanhFamily(1.0, -0.5j, 0.0, 0.2)
    margin, where = sym.infimum(a)
    assert margin == pytest.approx(0.5, abs=1e-15) and where == np.inf


@pytest.mark.parametrize("a, zero", [
    (sym.prandtl_symbol(-1.0, np.pi / 2), 0.0),
    (sym.tricomi_symbol(1.0, 0.0, -1.0), 0.0),
    (sym.lb_symbol(0.0, 1.0), 0.0),
])
def test_not_elliptic(a, zero):
    with pytest.raises(NotEllipticError) as info:
        sym.check_elliptic(a)
    assert abs(info.value.xi - zero) <= 0.01
    assert "not elliptic" in str(info.value)


@settings(max_examples=25, deadline=None)
@given(st.floats(0, 2 * np.pi), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_margin_unimodular_invariance(theta, c0, c1, c2):
    lam = np.exp(1j * theta)
    a = sym.TanhFamily(c0, c1, c2)
    b = sym.TanhFamily(lam * c0, lam * c1, lam * c2)
    assert sym.ellipticity_margin(b) == pytest.approx(sym.ellipticity_margin(a), rel=1e-14, abs=1e-300)
    # Multiplication by -1 and i is exact in floating point.
    assert sym.ellipticity_margin(-a) == sym.ellipticity_margin(a)


def test_invert_examples():
    d = sym.invert_tanh_family(2.0, 0.0, 0.0, np.pi)
    assert d.d0 == 0.5 and d.d1 == 0 and np.all(d.tail == 0)
    d = sym.invert_tanh_family(1.0, 1.0, 0.0, np.pi)
    assert d.d0 == pytest.approx(0.5) and d.d1 == pytest.approx(-0.5j)
    with pytest.raises(NotEllipticError):
        sym.invert_tanh_family(0.0, 1.0, 0.0, np.pi)


@settings(max_examples=25, deadline=None)
@given(st.floats(1.5, 4), st.floats(-1, 1), st.floats(-1, 1), st.sampled_from([np.pi, np.pi / 2, 1.0]))
def test_inverse_decomposition_properties(c0, c1, c2, h):
    freqs = FreqGrid()
    d = sym.invert_tanh_family(c0, c1, c2, h, freqs)
    a = sym.TanhFamily(c0, c1, c2, h)(freqs.nodes)
    assert np.max(np.abs(a * d.inverse_at(freqs.nodes) - 1)) <= 1e-12
    if abs(c1) > 1e-3 or abs(c2) > 1e-3:
        assert d.tail_slope() <= -0.9 * h


def test_tail_formula_matches_subtraction():
    d = sym.invert_tanh_family(2.0, 1.0, 1.0, np.pi)
    naive = 1 / d.symbol()(XI) - d.d0 + d.d1 * np.tanh(np.pi * XI)
    small = np.abs(XI) < 2
    assert np.allclose(d.tail_at(XI)[small], naive[small], rtol=1e-10, atol=1e-15)


def test_multiplier_diagnostics():
    r = sym.multiplier_diagnostics(sym.tanh_symbol())
    assert r.M0 <= 1.0 and r.tv == pytest.approx(2.0, abs=1e-9) and r.verdict == "multiplier"
    assert sym.multiplier_diagnostics(sym.coth_symbol()).verdict == "not a multiplier"
    c = sym.multiplier_diagnostics(sym.Constant(2 - 1j)).to_dict()
    assert c["tv"] == 0 and c["M0"] == pytest.approx(abs(2 - 1j)) and c["M1"] == 0
    assert set(c) >= {"margin", "tv", "M0", "M1", "verdict"}


def test_ide_symbol_examples():
    a = sym.ide_symbol((0.5, 2.0))
    assert np.allclose(a(XI), 0.5 - 4j * XI, rtol=0, atol=1e-14)
    k = sym.ide_symbol((0.0,), (1.0,), (0,), (0,), (builtin("sech"),))
    nodes = FreqGrid().nodes
    assert np.max(np.abs(k(nodes) - np.pi / np.cosh(np.pi * nodes))) < 1e-9
    zero = sym.ide_symbol((0.0, 0.0))
    assert sym.ellipticity_margin(zero) == 0.0 and zero.weight_order == 1.0
    with pytest.raises(OrderHypothesisError, match="order hypothesis violated"):
        sym.ide_symbol((1.0, 1.0), (1.0,), (1,), (1,), (builtin("sech"),))


def test_ide_symbol_without_kernels_is_polynomial():
    rng = np.random.default_rng(7)
    c = rng.normal(size=4) + 1j * rng.normal(size=4)
    xi = rng.uniform(-5, 5, 20)
    direct = sum(ck * (-2j * xi) ** k for k, ck in enumerate(c))
    got = sym.ide_symbol(tuple(c))(xi)
    assert np.max(np.abs(got - direct) / np.abs(direct)) <= 1e-13
