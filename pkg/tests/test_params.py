import math

import pytest
from hypothesis import given, strategies as st

from hausmorrey.errors import DimensionError, NontrivialityViolation, ParamError, SplitMismatch
from hausmorrey.params import (
    INF,
    FactorParams,
    Family,
    MultilinearParams,
    SpaceParams,
    as_exponent,
    scaling_index,
    validate_params,
)


def test_basic_local_tuple_is_valid():
    vp = validate_params(SpaceParams(2, 2, 2, 2, 1.0, 0.0))
    assert "local_upper" in vp.regimes
    assert vp.space.lam == 1.0


def test_zero_lambda_with_finite_q_is_trivial():
    with pytest.raises(NontrivialityViolation):
        validate_params(SpaceParams(2, 2, 2, 2, 0.0, 0.0))


def test_zero_lambda_allowed_for_q_inf():
    validate_params(SpaceParams(2, 2, 2, INF, 0.0))
    validate_params(SpaceParams(2, 2, 2, INF, 0.0, family="complementary"))


def test_complementary_needs_negative_lambda():
    with pytest.raises(NontrivialityViolation):
        validate_params(SpaceParams(2, 2, 2, 2, 0.5, family="complementary"))
    validate_params(SpaceParams(2, 2, 2, 2, -0.5, family="complementary"))


def test_dimension_one_rejected():
    with pytest.raises(DimensionError):
        validate_params(SpaceParams(1, 2, 2, 2, 0.5))


@pytest.mark.parametrize("bad", [0, -1, float("nan"), "abc", True])
def test_bad_exponents(bad):
    with pytest.raises((ParamError, ValueError)):
        SpaceParams(2, bad, 2, 2, 0.5)


def test_inf_spellings():
    assert as_exponent("inf") is INF
    assert as_exponent(float("inf")) is INF
    assert as_exponent(" Infinity ") is INF
    assert as_exponent(2) == 2.0


def test_sharp_bilinear_tuple():
    f = FactorParams(4, 4, 0.25)
    mp = MultilinearParams.from_factors(2, [f, f], 2, sharp=True)
    vp = validate_params(mp)
    assert mp.space.p == 2 and mp.space.lam == 0.5
    assert mp.space.lam * mp.space.p == pytest.approx(f.lam * f.p)
    assert "multilinear_mixed" in vp.regimes


def test_split_mismatch():
    f1, f2 = FactorParams(4, 4, 0.25), FactorParams(4, 4, 0.25)
    space = SpaceParams(2, 3, 2, 2, 0.5)
    with pytest.raises(SplitMismatch):
        validate_params(MultilinearParams(space, (f1, f2)))
    with pytest.raises(SplitMismatch):
        validate_params(MultilinearParams(SpaceParams(2, 2, 2, 2, 0.6), (f1, f2)))


def test_factor_q_is_derived():
    f1, f2 = FactorParams(3, 3, 0.2), FactorParams(6, 6, 0.1)
    mp = MultilinearParams.from_factors(2, [f1, f2], 2)
    assert mp.factor_q(0) == pytest.approx(2 * 3 / 2)
    assert mp.factor_q(1) == pytest.approx(2 * 6 / 2)


def test_modified_needs_equal_dims():
    f1, f2 = FactorParams(4, 4, 0.25, n=2), FactorParams(4, 4, 0.25, n=3)
    with pytest.raises(DimensionError):
        validate_params(MultilinearParams.from_factors(2, [f1, f2], 2, modified=True))


def test_scaling_index():
    assert scaling_index(SpaceParams(2, 2, 2, 2, 0.5)) == pytest.approx(0.5)
    assert scaling_index(SpaceParams(3, 2, 4, 2, 0.5, 1.0)) == pytest.approx(0.5)
    assert scaling_index(SpaceParams(2, 2, INF, 2, 0.5, 1.0)) == pytest.approx(0.0)


exps = st.floats(0.3, 6.0)


@given(n=st.integers(2, 5), p=exps, pt=exps, q=exps, lam=st.floats(0.01, 3.0), alpha=st.floats(-1, 2))
def test_validation_is_idempotent(n, p, pt, q, lam, alpha):
    vp = validate_params(SpaceParams(n, p, pt, q, lam, alpha))
    assert validate_params(vp) is vp


def _accepted(s):
    try:
        validate_params(s)
        return True
    except NontrivialityViolation:
        return False


@given(n=st.integers(2, 5), p=exps, pt=exps, q=st.one_of(exps, st.just(INF)),
       lam=st.floats(-3, 3), fam=st.sampled_from(["local", "complementary"]))
def test_mirror_preserves_admissibility(n, p, pt, q, lam, fam):
    s = SpaceParams(n, p, pt, q, lam, 0.0, fam)
    assert _accepted(s) == _accepted(s.mirrored())


@given(n=st.integers(2, 5), p=exps, pt=exps, q=st.one_of(exps, st.just(INF)),
       lam=st.floats(-3, 3), fam=st.sampled_from(["local", "complementary"]))
def test_rejected_tuple_is_accepted_in_the_other_family(n, p, pt, q, lam, fam):
    s = SpaceParams(n, p, pt, q, lam, 0.0, fam)
    if _accepted(s) or (lam == 0 and q is not INF):
        return
    assert _accepted(SpaceParams(n, p, pt, q, lam, 0.0, s.family.mirrored()))


@pytest.mark.parametrize("fam", ["local", "complementary"])
def test_zero_lambda_finite_q_has_no_mirror(fam):
    s = SpaceParams(2, 2, 2, 2, 0.0, 0.0, fam)
    for t in (s, s.mirrored()):
        with pytest.raises(NontrivialityViolation):
            validate_params(t)
