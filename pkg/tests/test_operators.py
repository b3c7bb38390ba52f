import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hausmorrey.errors import ArityMismatch, DivergentConstant, ParamError, UnsupportedArity
from hausmorrey.functions import (
    Combination,
    ExpPowerKernel,
    ExpRadialBilinear,
    OnePlusCos,
    PowerCutoff,
    PowerCutoffKernel,
    SeparableBilinear,
    SeparableFunction,
    Tabulated,
    ZeroProfile,
    gamma_fn,
)
from hausmorrey.operators import (
    OperatorKind,
    apply_direct,
    apply_linear,
    apply_multilinear,
    constant_for_operator,
    reduced_kernel_linear,
    sharp_constant,
)
from hausmorrey.params import FactorParams, MultilinearParams, SpaceParams
from hausmorrey.quadrature import EndHint, Integrand1D, integrate

from conftest import rel

BASE = SpaceParams(2, 2, 2, 2, 0.5)
EXP = ExpPowerKernel(0.0, 1.0)
BIEXP = SeparableBilinear(ExpPowerKernel(0.0, 1.0), ExpPowerKernel(0.0, 1.0))


def bilinear_params(pt=4.0, lam=0.25, family="local", modified=False):
    f = FactorParams(pt, pt, lam)
    return MultilinearParams.from_factors(2, [f, f], 2.0, 0.0, family, modified=modified)


# ----------------------------------------------------------------------------
# applied operators


def test_htilde_at_one(frozen):
    T = apply_linear("Htilde", EXP, PowerCutoff(-0.5), n=2)
    assert rel(float(T(1.0)), frozen["htilde_at_one"]) < 1e-9
    # the quoted 9.3847 is truncated; 2 pi sqrt(pi) erf(1) = 9.384869
    assert float(T(1.0)) == pytest.approx(9.3847, abs=5e-4)


def test_rtilde_at_one(frozen):
    T = apply_multilinear("Rtilde", BIEXP, PowerCutoff(-0.5), PowerCutoff(-0.5), n=2)
    assert rel(float(T(1.0)), frozen["rtilde_at_one"]) < 1e-9
    assert float(T(1.0)) == pytest.approx(88.06, abs=0.02)


def test_hardy_of_a_constant_is_the_constant():
    one = Tabulated([0.5, 1.0, 2.0], [1.0, 1.0, 1.0], extrapolation="constant")
    T = apply_linear("Hardy", None, one, n=2)
    assert np.allclose(T(np.array([0.1, 1.0, 3.0, 50.0])), 1.0, rtol=1e-9)


def test_zero_input_gives_zero():
    assert np.all(apply_linear("Htilde", EXP, ZeroProfile(), n=2)(np.array([0.5, 1.0, 4.0])) == 0.0)
    T = apply_multilinear("R", BIEXP, ZeroProfile(), PowerCutoff(-0.5), n=2)
    assert np.all(T(np.array([0.5, 1.0, 4.0])) == 0.0)


@pytest.mark.parametrize("beta", [-0.7, -1.3, -2.5])
def test_hardy_closed_form_and_direct(beta):
    # ball average of rho^beta chi_{rho>1}: c (r^beta - r^-n), c = n/(beta+n)
    n = 2
    r = np.array([0.5, 1.5, 3.0, 20.0])
    T = apply_linear("Hardy", None, PowerCutoff(beta), r_points=None, n=n)
    c = n / (beta + n)
    exact = np.where(r > 1, c * (r ** beta - r ** (-n)), 0.0)
    assert np.allclose(T(r), exact, rtol=1e-9, atol=1e-15)
    assert np.allclose(apply_direct("Hardy", PowerCutoff(beta), n, rho=r), exact, rtol=1e-9, atol=1e-15)


def test_dual_hardy_direct_matches_hausdorff_form():
    g = PowerCutoff(-1.2)
    r = np.array([0.5, 1.0, 2.0, 7.0])
    T = apply_linear("DualHardy", None, g, n=3)
    assert np.allclose(T(r), apply_direct("DualHardy", g, 3, rho=r), rtol=1e-7)


def test_separable_input_is_radialized():
    f = SeparableFunction(PowerCutoff(-0.5), OnePlusCos(2, 0.5))
    T = apply_linear("Htilde", EXP, f)
    U = apply_linear("Htilde", EXP, PowerCutoff(-0.5), n=2)
    # the angular mean of 1 + a cos is 1
    assert float(T(2.0)) == pytest.approx(float(U(2.0)), rel=1e-9)


def test_h_keeps_the_angular_factor():
    h = OnePlusCos(2, 0.5)
    out = apply_linear("H", EXP, SeparableFunction(PowerCutoff(-0.5), h))
    assert isinstance(out, SeparableFunction) and out.angular is h


def test_r_points_tabulates():
    r = np.geomspace(0.5, 50, 30)
    T = apply_linear("Htilde", EXP, PowerCutoff(-0.5), r_points=r, n=2)
    U = apply_linear("Htilde", EXP, PowerCutoff(-0.5), n=2)
    assert isinstance(T, Tabulated)
    assert np.allclose(T(r), U(r), rtol=1e-12)


@pytest.mark.parametrize("kind", ["Htilde", "Cesaro", "WeightedHardy"])
def test_fast_path_matches_general(kind):
    k = ExpPowerKernel(0.3, 1.7) if kind == "Htilde" else PowerCutoffKernel(0.0, 1.0, "inner")
    r = np.array([0.7, 1.3, 4.0, 30.0])
    a = apply_linear(kind, k, PowerCutoff(-1.5), n=2)(r)
    b = apply_linear(kind, k, PowerCutoff(-1.5), n=2, fast=False)(r)
    assert np.allclose(a, b, rtol=1e-9, atol=1e-300)


@pytest.mark.parametrize("kind", ["R", "Rtilde", "S"])
def test_separable_kernel_product_path_matches_tensor_path(kind):
    r = np.array([0.8, 1.5, 6.0])
    k = SeparableBilinear(ExpPowerKernel(0.2, 1.0), ExpPowerKernel(0.5, 2.0))
    a = apply_multilinear(kind, k, PowerCutoff(-0.6), PowerCutoff(-0.9), n=2)(r)
    b = apply_multilinear(kind, k, PowerCutoff(-0.6), PowerCutoff(-0.9), n=2, use_separable=False, fast=False)(r)
    assert np.allclose(a, b, rtol=1e-6)


def test_arity_errors():
    with pytest.raises(ArityMismatch):
        apply_linear("R", BIEXP, PowerCutoff(-0.5), n=2)
    with pytest.raises(ArityMismatch):
        apply_multilinear("Htilde", EXP, PowerCutoff(-0.5), PowerCutoff(-0.5), n=2)
    with pytest.raises(UnsupportedArity):
        apply_multilinear("R", BIEXP, [PowerCutoff(-0.5)] * 3, n=2)


def test_modified_kinds_force_equal_dimensions():
    with pytest.raises(ParamError):
        apply_multilinear("R_mod", BIEXP, PowerCutoff(-0.5), PowerCutoff(-0.5), n=2, dims=(2, 3))


# ----------------------------------------------------------------------------
# constants


def test_hardy_constant():
    assert sharp_constant("hardy", BASE) == pytest.approx(4 / 3, rel=1e-15)


def test_dual_hardy_constant_is_four_on_both_routes():
    assert sharp_constant("dual_hardy", BASE) == 4.0
    # the Hausdorff-kernel route on its own: int K(t) t^sigma dt with sigma = 1/2
    K = reduced_kernel_linear("DualHardy", None, 2)
    f = Integrand1D(lambda t: K(t) * t ** 0.5, EndHint.power(-0.5), EndHint.zero(), K.breakpoints)
    assert rel(integrate(f, None).value, 4.0) < 1e-9


def test_weighted_hardy_constant_is_two():
    one = PowerCutoffKernel(0.0, 1.0, "inner")
    assert sharp_constant("weighted_hardy", BASE, one) == pytest.approx(2.0, rel=1e-9)


def test_c1_gamma_identity(frozen):
    v = sharp_constant("C1", BASE, EXP)
    assert rel(v, 2 * math.pi * gamma_fn(0.5)) < 1e-8
    assert rel(v, frozen["c1_exp"]) < 1e-8


def test_c3_gamma_identity(frozen):
    v = sharp_constant("C3", bilinear_params(), BIEXP)
    assert rel(v, frozen["c3_exp"]) < 1e-7
    assert v == pytest.approx(518.95, abs=0.01)


def test_c4_c5_against_mpmath(frozen):
    k = ExpRadialBilinear(0.3, 0.2, 1.0)
    b = frozen["bilinear_constants"]
    assert rel(sharp_constant("C4", bilinear_params(), k), b["C4_exp_radial"]) < 1e-7
    assert rel(sharp_constant("C5", bilinear_params(), k), b["C5_exp_radial"]) < 1e-7


def test_c6_against_mpmath(frozen):
    v = sharp_constant("C6", bilinear_params(), ExpPowerKernel(0.5, 1.0))
    assert rel(v, frozen["bilinear_constants"]["C6_sqrt_exp"]) < 1e-7


def test_divergent_constant():
    with pytest.raises(DivergentConstant):
        sharp_constant("C1", BASE, PowerCutoffKernel(-0.5, 1.0, "inner"))


def test_plain_r_has_no_complementary_constant():
    for kind in ("R", "S"):
        with pytest.raises(ParamError):
            constant_for_operator(kind, "complementary")
    assert constant_for_operator("R_mod", "complementary").value == "C9"


def test_complementary_constant():
    s = SpaceParams(2, 2, 2, 2, -0.5, family="complementary")
    # sigma = 1 + 1/2, so omega_2 Gamma(3/2)
    assert rel(sharp_constant("C7", s, EXP), 2 * math.pi * gamma_fn(1.5)) < 1e-8


# ----------------------------------------------------------------------------
# properties

c_values = st.floats(0.01, 100.0)


@given(c=c_values, a=st.floats(0.0, 2.0), b=st.floats(0.3, 3.0))
def test_constant_scales_with_the_kernel(c, a, b):
    k = ExpPowerKernel(a, b)
    assert rel(sharp_constant("C1", BASE, k.scaled(c)), c * sharp_constant("C1", BASE, k)) < 1e-9


@given(c=c_values, beta=st.floats(-1.9, -0.2), r=st.floats(0.2, 50.0))
def test_applied_operator_scales_with_the_kernel(c, beta, r):
    g = PowerCutoff(beta)
    a = float(apply_linear("Htilde", EXP.scaled(c), g, n=2)(r))
    b = float(apply_linear("Htilde", EXP, g, n=2)(r))
    assert rel(a, c * b) < 1e-9


@given(b1=st.floats(-1.9, -0.2), b2=st.floats(-1.9, -0.2), c1=st.floats(-3, 3), c2=st.floats(-3, 3),
       r=st.floats(0.3, 30.0))
def test_linearity(b1, b2, c1, c2, r):
    f1, f2 = PowerCutoff(b1), PowerCutoff(b2)
    T = apply_linear("Htilde", EXP, Combination([(c1, f1), (c2, f2)]), n=2)
    T1 = apply_linear("Htilde", EXP, f1, n=2)
    T2 = apply_linear("Htilde", EXP, f2, n=2)
    want = c1 * float(T1(r)) + c2 * float(T2(r))
    scale = abs(c1 * float(T1(r))) + abs(c2 * float(T2(r)))
    assert abs(float(T(r)) - want) <= 1e-9 * max(scale, 1e-300)


@given(b1=st.floats(-1.9, -0.2), b2=st.floats(-1.9, -0.2), c=st.floats(0.1, 10.0), r=st.floats(0.3, 30.0))
def test_bilinearity(b1, b2, c, r):
    g1, g2 = PowerCutoff(b1), PowerCutoff(b2)
    a = float(apply_multilinear("Rtilde", BIEXP, g1.scaled(c), g2, n=2)(r))
    b = float(apply_multilinear("Rtilde", BIEXP, g1, g2, n=2)(r))
    assert rel(a, c * b) < 1e-9


@given(beta=st.floats(-1.9, -0.2), a=st.floats(0.0, 1.5), b=st.floats(0.3, 3.0), r=st.floats(0.3, 30.0))
def test_fast_and_general_paths_agree(beta, a, b, r):
    k = ExpPowerKernel(a, b)
    x = float(apply_linear("Htilde", k, PowerCutoff(beta), n=2)(r))
    y = float(apply_linear("Htilde", k, PowerCutoff(beta), n=2, fast=False)(r))
    assert rel(x, y) < 1e-9
