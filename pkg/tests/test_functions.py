import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from hausmorrey.errors import EpsTooLarge, ParamError
from hausmorrey.functions import (
    ConstantAngular,
    CosPower,
    OnePlusCos,
    PowerCutoff,
    ProductAngular,
    SeparableFunction,
    Tabulated,
    ball_volume,
    make_extremizer,
    radialize,
    sphere_area,
    sphere_lp_norm,
)
from hausmorrey.params import INF, SpaceParams


def test_sphere_constants():
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)
    assert ball_volume(3) == pytest.approx(4 * math.pi / 3)


def test_extremizer_examples():
    f = make_extremizer(SpaceParams(2, 2, 2, 2, 1.0), 0.5)
    assert f.beta == pytest.approx(-0.5) and f.side == "outer"
    g = make_extremizer(SpaceParams(2, 2, INF, 2, 1.0), 0.25)
    assert g.beta == pytest.approx(0.75)
    with pytest.raises(EpsTooLarge):
        make_extremizer(SpaceParams(2, 2, 2, 2, 1.0), 1.5)


def test_radialize_examples():
    g = PowerCutoff(-0.5)
    r = np.array([0.5, 2.0, 7.0])
    assert radialize(SeparableFunction(g, ConstantAngular(2))) is g
    assert np.allclose(radialize(SeparableFunction(g, OnePlusCos(2, 1.0)))(r), g(r))
    assert np.allclose(radialize(SeparableFunction(g, CosPower(2, 2.0)))(r), 0.5 * g(r), rtol=1e-14)


angular_factors = st.one_of(
    st.builds(OnePlusCos, st.just(2), st.floats(-0.95, 0.95)),
    st.builds(OnePlusCos, st.just(3), st.floats(-1.0, 1.0)),
    st.builds(OnePlusCos, st.sampled_from([2, 3]), st.sampled_from([-1.0, 1.0])),
    st.builds(CosPower, st.sampled_from([2, 3]), st.floats(0.0, 4.0)),
)


smooth_factors = st.one_of(
    st.builds(OnePlusCos, st.just(2), st.floats(-0.95, 0.95)),
    st.builds(OnePlusCos, st.just(3), st.floats(-0.99, 0.99)),
    st.builds(CosPower, st.sampled_from([2, 3]), st.sampled_from([0.0, 2.0, 4.0, 6.0])),
)


def _scipy_sphere_integral(h, p):
    """int |h|^p over the sphere; every factor here depends on xi_1 only."""
    if h.n == 2:
        f = lambda th: abs(float(h(np.array([math.cos(th), math.sin(th)])))) ** p
        return quad(f, 0.0, 2 * math.pi, points=[math.pi / 2, math.pi, 3 * math.pi / 2], epsabs=0, epsrel=1e-13, limit=400)[0]
    f = lambda x: abs(float(h(np.array([x, math.sqrt(max(0.0, 1 - x * x)), 0.0])))) ** p
    return 2 * math.pi * quad(f, -1.0, 1.0, points=[0.0], epsabs=0, epsrel=1e-13, limit=400)[0]


@given(h=smooth_factors, p=st.floats(0.5, 6.0))
def test_angular_closed_forms_match_sphere_quadrature(h, p):
    numeric = sphere_lp_norm(h, p, points=1 << 14)
    assert numeric == pytest.approx(h.lp_norm(p), rel=1e-10)


@given(h=angular_factors, p=st.floats(0.5, 6.0))
def test_angular_closed_forms_match_adaptive_quadrature(h, p):
    assert _scipy_sphere_integral(h, p) == pytest.approx(h.lp_integral(p), rel=1e-9)


@given(h=angular_factors)
def test_angular_means_match_quadrature(h):
    assert h.mean() * sphere_area(h.n) == pytest.approx(_scipy_sphere_integral(h, 1.0), rel=1e-9)


def test_product_angular():
    h = ProductAngular(OnePlusCos(2, 0.5), CosPower(2, 2.0))
    # (1 + a cos) cos^2 has mean 1/2 on the circle
    assert h.mean() == pytest.approx(0.5, rel=1e-12)
    assert h.lp_norm(INF) == pytest.approx(1.5, rel=1e-6)


def test_power_cutoff_values():
    f = PowerCutoff(-1.5, "outer", 2.0)
    assert np.allclose(f(np.array([0.5, 1.5, 4.0])), [0.0, 2.0 * 1.5 ** -1.5, 2.0 * 4.0 ** -1.5])
    g = PowerCutoff(0.5, "inner")
    assert np.allclose(g(np.array([0.25, 2.0])), [0.5, 0.0])


def test_tabulated_is_monotone_cubic(tmp_path):
    path = tmp_path / "prof.csv"
    path.write_text("knot,value\n0.5,1\n1,0.8\n2,0.3\n4,0.1\n")
    t = Tabulated.from_csv(str(path))
    x = np.linspace(0.5, 4.0, 200)
    y = t(x)
    assert np.all(np.diff(y) <= 1e-15)
    assert t(np.array([10.0]))[0] == 0.0


def test_tabulated_needs_increasing_knots():
    with pytest.raises(ParamError):
        Tabulated([1.0, 1.0, 2.0], [1.0, 2.0, 3.0])
    with pytest.raises(ParamError):
        Tabulated([-1.0, 1.0], [1.0, 2.0])


def test_dilation_and_scaling_views():
    f = PowerCutoff(-0.7)
    r = np.array([0.3, 1.2, 5.0])
    assert np.allclose(f.dilated(2.0)(r), f(2.0 * r))
    assert np.allclose(f.scaled(3.0)(r), 3.0 * f(r))
