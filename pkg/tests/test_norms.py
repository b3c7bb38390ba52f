import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from hausmorrey.errors import DomainError, InfiniteNorm
from hausmorrey.functions import (
    CosPower,
    OnePlusCos,
    PowerCutoff,
    SeparableFunction,
    Tabulated,
    ZeroProfile,
    radialize,
)
from hausmorrey.norms import COMPLEMENTARY_LABEL_NOTE, P_INF_NOTE, closed_form_power_norm, space_norm
from hausmorrey.params import INF, SpaceParams, scaling_index

from conftest import rel


def test_zero_function():
    assert space_norm(ZeroProfile(), SpaceParams(2, 2, 2, 2, 1.0)).value == 0.0


def test_sqrt_pi_example():
    s = SpaceParams(2, 2, 2, 2, 1.0)
    assert space_norm(PowerCutoff(-0.5), s).value == pytest.approx(math.sqrt(math.pi), rel=1e-9)
    assert closed_form_power_norm(-0.5, s) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


def test_sup_example():
    s = SpaceParams(2, 2, 2, INF, 1.0)
    expect = math.sqrt(2 * math.pi) * 0.5
    assert space_norm(PowerCutoff(-0.5), s).value == pytest.approx(expect, rel=1e-9)
    assert closed_form_power_norm(-0.5, s) == pytest.approx(expect, rel=1e-14)


def test_closed_form_domain():
    with pytest.raises(DomainError):
        closed_form_power_norm(0.9, SpaceParams(2, 2, 2, 2, 1.0))


def test_infinite_norm_is_a_verdict():
    # beta above the admissible range: the inner integral grows too fast
    with pytest.raises(InfiniteNorm):
        space_norm(PowerCutoff(0.9), SpaceParams(2, 2, 2, 2, 1.0))
    # inner cutoff not integrable at the origin
    with pytest.raises(InfiniteNorm):
        space_norm(PowerCutoff(-1.5, "inner"), SpaceParams(2, 2, 2, 2, 1.0))


def test_against_mpmath_oracle(frozen):
    for c in frozen["power_norms"]:
        s = SpaceParams(c["n"], c["p"], c["p_tilde"], c["q"], c["lambda"], c["alpha"])
        v = space_norm(PowerCutoff(c["beta"]), s).value
        assert rel(v, c["value"]) < 1e-8, c
        if c["beta"] * c["p_tilde"] + c["n"] + c["alpha"] > 0:
            assert rel(closed_form_power_norm(c["beta"], s), c["value"]) < 1e-12, c


def test_complementary_against_mpmath_oracle(frozen):
    for c in frozen["complementary_power_norms"]:
        s = SpaceParams(c["n"], c["p"], c["p_tilde"], c["q"], c["lambda"], c["alpha"], "complementary")
        v = space_norm(PowerCutoff(c["beta"]), s).value
        assert rel(v, c["value"]) < 1e-8, c


def test_p_inf_deviation_logged():
    res = space_norm(PowerCutoff(-0.5), SpaceParams(2, INF, 2, 2, 1.0))
    assert P_INF_NOTE in res.deviations
    # p = inf with a radial input: the angular sup is 1, so the value is the p = 2 norm without omega^(1/2)
    base = space_norm(PowerCutoff(-0.5), SpaceParams(2, 2, 2, 2, 1.0)).value
    assert res.value == pytest.approx(base / math.sqrt(2 * math.pi) ** 1.0, rel=1e-9)


def test_complementary_sup_label_logged():
    res = space_norm(PowerCutoff(-1.5), SpaceParams(2, 2, INF, INF, -0.5, family="complementary"))
    assert COMPLEMENTARY_LABEL_NOTE in res.deviations


def test_p_tilde_inf_power():
    # ||rho^b chi_{rho>1}|| with p~ = q = inf: sup_r r^-lam sup_{1<rho<r} rho^b (omega^(1/p))
    s = SpaceParams(2, 2, INF, INF, 1.0)
    v = space_norm(PowerCutoff(0.5), s).value
    # sup_{r>1} r^{-1} r^{1/2} = 1 at r = 1
    assert v == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)


def test_tabulated_profile_norm_matches_power():
    # a tabulated copy truncated at 1e4; the lost tail is below 1e-6 relative
    knots = np.geomspace(1.0, 1e4, 400)
    t = Tabulated(knots, knots ** -1.5, extrapolation="zero")
    s = SpaceParams(2, 2, 2, 2, 0.8)
    a = space_norm(t, s).value
    b = space_norm(PowerCutoff(-1.5), s).value
    assert rel(a, b) < 1e-5


# ----------------------------------------------------------------------------
# properties

local_params = st.builds(
    lambda n, p, pt, q, lam_frac, alpha: SpaceParams(n, p, pt, q, lam_frac * (n + alpha) / pt, alpha),
    st.integers(2, 4),
    st.floats(1.0, 4.0),
    st.floats(1.0, 4.0),
    st.one_of(st.floats(1.0, 4.0), st.just(INF)),
    st.floats(0.1, 0.9),
    st.floats(-0.5, 1.0),
)


def _beta(s, frac):
    sig = scaling_index(s)
    return -sig - 1 + frac


@given(s=local_params, frac=st.floats(0.05, 0.95))
def test_quadrature_matches_beta_closed_form(s, frac):
    beta = _beta(s, frac)
    assume(beta * s.p_tilde + s.n + s.alpha > 0.05)
    v = space_norm(PowerCutoff(beta), s).value
    assert rel(v, closed_form_power_norm(beta, s)) < 1e-6


@given(s=local_params, frac=st.floats(0.05, 0.95), delta=st.floats(0.1, 10.0))
def test_dilation_covariance(s, frac, delta):
    beta = _beta(s, frac)
    f = PowerCutoff(beta)
    a = space_norm(f.dilated(delta), s).value
    b = space_norm(f, s).value
    assert rel(a, delta ** (-scaling_index(s)) * b) < 1e-8


@given(s=local_params, frac=st.floats(0.05, 0.95), c=st.floats(0.01, 100.0))
def test_positive_homogeneity(s, frac, c):
    f = PowerCutoff(_beta(s, frac))
    assert rel(space_norm(f.scaled(c), s).value, c * space_norm(f, s).value) < 1e-9


@given(frac=st.floats(0.05, 0.95), lam=st.floats(0.5, 1.5), c=st.floats(0.1, 10.0))
def test_homogeneity_in_quasi_norm_regime(frac, lam, c):
    s = SpaceParams(2, 0.5, 0.5, 0.5, lam)
    f = PowerCutoff(_beta(s, frac))
    assert rel(space_norm(f.scaled(c), s).value, c * space_norm(f, s).value) < 1e-9


@given(s=local_params, f1=st.floats(0.05, 0.9), gap=st.floats(0.01, 0.5))
def test_monotone_in_the_profile(s, f1, gap):
    # rho^b1 <= rho^b2 on rho > 1 when b1 < b2
    b1 = _beta(s, f1)
    b2 = min(b1 + gap, _beta(s, 0.98))
    assert space_norm(PowerCutoff(b1), s).value <= space_norm(PowerCutoff(b2), s).value * (1 + 1e-12)


@given(frac=st.floats(0.05, 0.95), h=st.one_of(
    st.builds(OnePlusCos, st.just(2), st.floats(-0.95, 0.95)),
    st.builds(CosPower, st.just(2), st.floats(0.0, 3.0))), p=st.floats(1.0, 4.0))
def test_radialization_contracts_the_norm(frac, h, p):
    s = SpaceParams(2, p, 2.0, 2.0, 0.5)
    f = SeparableFunction(PowerCutoff(_beta(s, frac)), h)
    # omega^{1/p} omega^{1/p'} / omega = 1
    assert space_norm(radialize(f), s).value <= space_norm(f, s).value * (1 + 1e-12)


def test_separable_norm_factorizes():
    s = SpaceParams(3, 3, 2, 2, 0.5)
    h = OnePlusCos(3, 0.4)
    g = PowerCutoff(-1.7)
    a = space_norm(SeparableFunction(g, h), s).value
    b = space_norm(g, s).value
    assert a == pytest.approx(b * h.lp_norm(3) / (4 * math.pi) ** (1 / 3), rel=1e-12)
