import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sci

from hausmorrey.errors import DivergentIntegral, NonConvergence, ParamError, SupAtBoundary
from hausmorrey.functions.special import gamma_fn
from hausmorrey.quadrature import (
    DEFAULT_CFG,
    EndHint,
    Integrand1D,
    Integrand2D,
    QuadConfig,
    integrate,
    sup_on_log_grid,
    tensor_integrate_2d,
)


def exp_power(a, b=1.0):
    return Integrand1D(lambda t: t ** a * np.exp(-b * t), EndHint.power(a), EndHint.fast())


def test_exponential_normalization():
    assert integrate(exp_power(0.0)).value == pytest.approx(1.0, rel=1e-12)


def test_gamma_half():
    v = integrate(exp_power(-0.5)).value
    assert v == pytest.approx(1.772453850905516, rel=1e-12)
    assert v == pytest.approx(gamma_fn(0.5), rel=1e-12)


def test_finite_interval_with_singularity():
    f = Integrand1D(lambda t: t ** -0.5, EndHint.power(-0.5), EndHint.power(-0.5))
    assert integrate(f, (0.0, 1.0)).value == pytest.approx(2.0, rel=1e-11)


def test_divergence_screened_before_quadrature():
    calls = []

    def f(t):
        calls.append(1)
        return 1.0 / t

    with pytest.raises(DivergentIntegral):
        integrate(Integrand1D(f, EndHint.power(-1.0), EndHint.fast()))
    with pytest.raises(DivergentIntegral):
        integrate(Integrand1D(lambda t: t ** -0.5, EndHint.power(-0.5), EndHint.power(-0.5)))
    assert not calls


def test_power_tail_added_in_closed_form():
    # int_1^inf t^-3 = 1/2, int_0^1 t = 1/2
    f = Integrand1D(lambda t: np.where(t < 1, t, t ** -3.0), EndHint.power(1.0), EndHint.power(-3.0), (1.0,))
    assert integrate(f).value == pytest.approx(1.0, rel=1e-11)


def test_nonconvergence_reported():
    cfg = QuadConfig(rel_tol=1e-14, max_subdivisions=10)
    f = Integrand1D(lambda t: np.sin(1.0 / t) ** 2, EndHint.zero(), EndHint.power(-2.0))
    with pytest.raises(NonConvergence):
        integrate(f, (1e-4, 1.0), cfg)


@given(a=st.floats(-0.9, 3.0), b=st.floats(0.2, 5.0))
def test_gamma_family_matches_closed_form(a, b):
    v = integrate(exp_power(a, b)).value
    assert v == pytest.approx(gamma_fn(a + 1) * b ** (-(a + 1)), rel=1e-9)


@given(lo=st.floats(0.01, 5.0), w=st.floats(0.01, 10.0), k=st.floats(-2.5, 2.5))
def test_finite_powers(lo, w, k):
    hi = lo + w
    f = Integrand1D(lambda t: t ** k, EndHint.power(k), EndHint.power(k))
    exact = (math.log(hi / lo) if k == -1 else (hi ** (k + 1) - lo ** (k + 1)) / (k + 1))
    assert integrate(f, (lo, hi)).value == pytest.approx(exact, rel=1e-10)


def test_tensor_product_of_exponentials():
    f = Integrand2D.separable(exp_power(0.0), exp_power(0.0))
    assert tensor_integrate_2d(f).value == pytest.approx(1.0, rel=1e-11)


def test_tensor_gamma_quarter_squared():
    f = Integrand2D.separable(exp_power(-0.75), exp_power(-0.75))
    assert tensor_integrate_2d(f).value == pytest.approx(gamma_fn(0.25) ** 2, rel=1e-9)
    assert gamma_fn(0.25) ** 2 == pytest.approx(13.14504, rel=1e-6)


def test_separable_path_matches_full_2d():
    f = Integrand2D.separable(exp_power(-0.75), exp_power(0.5, 2.0))
    a = tensor_integrate_2d(f, use_separable=True).value
    b = tensor_integrate_2d(f, use_separable=False).value
    assert a == pytest.approx(b, rel=10 * DEFAULT_CFG.rel_tol)


def test_non_separable_2d_against_scipy():
    def g(t1, t2):
        return t1 ** 0.3 * t2 ** -0.4 * np.exp(-np.hypot(t1, t2))

    f = Integrand2D(g, (EndHint.power(0.3), EndHint.power(-0.4)), (EndHint.fast(), EndHint.fast()))
    ours = tensor_integrate_2d(f).value
    ref = sci.dblquad(lambda y, x: g(x, y), 0, np.inf, 0, np.inf, epsabs=0, epsrel=1e-11)[0]
    assert ours == pytest.approx(ref, rel=1e-7)


def test_sup_calculus_example():
    # sup_{r>1} r^-1 (r - 1)^(1/2) = 1/2 at r = 2
    g = Integrand1D(lambda r: np.where(r > 1, np.sqrt(np.maximum(r - 1, 0.0)) / r, 0.0),
                    EndHint.zero(), EndHint.power(-0.5), (1.0,))
    res = sup_on_log_grid(g)
    assert res.value == pytest.approx(0.5, rel=1e-10)
    assert res.argmax == pytest.approx(2.0, rel=1e-4)


def test_sup_of_constant():
    g = Integrand1D(lambda r: np.full_like(r, 3.25), EndHint.power(0.0), EndHint.power(0.0))
    assert sup_on_log_grid(g).value == 3.25


def test_sup_at_boundary():
    g = Integrand1D(lambda r: r, EndHint.power(1.0), EndHint.power(1.0))
    with pytest.raises(SupAtBoundary):
        sup_on_log_grid(g)


def test_sup_refinement_is_monotone():
    g = Integrand1D(lambda r: np.where(r > 1, np.sqrt(np.maximum(r - 1, 0.0)) / r, 0.0),
                    EndHint.zero(), EndHint.power(-0.5), (1.0,))
    vals = [sup_on_log_grid(g, QuadConfig(points_per_decade=k)).value for k in (8, 16, 64, 256)]
    assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("kw", [{"rel_tol": 0}, {"t_min": 2.0, "t_max": 1.0}, {"points_per_decade": 4}])
def test_config_invariants(kw):
    with pytest.raises(ParamError):
        QuadConfig(**kw)
