"""Hausdorff-type operators on radial and separable functions, and their sharp constants.

Every operator reduces, on radial inputs, to a Mellin-type integral

    T(rho) = int K(t) g(rho / t) dt                                   (linear)
    T(rho) = int int K(t1, t2) g1(rho / t1) g2(rho / t2) dt1 dt2      (bilinear)

with a reduced kernel K built from the kernel profile phi.  For a power
function g(rho) = rho^{-sigma} the output is g times int K t^{sigma}, which
is why every sharp constant has the form int K(t) prod t_i^{sigma_i} dt with
sigma the scaling index of the relevant space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ArityMismatch,
    DivergentConstant,
    DivergentIntegral,
    NonConvergence,
    ParamError,
    RepresentationMismatch,
    UnsupportedArity,
)
from .functions.angular import (
    ConstantAngular,
    ProductAngular,
    SeparableFunction,
    radialize,
    sphere_area,
)
from .functions.kernels import KernelProfile, is_bilinear, is_linear
from .functions.profiles import Combination, PowerCutoff, RadialProfile, Scaled, Tabulated
from .params import (
    INF,
    Family,
    MultilinearParams,
    SpaceParams,
    scaling_index,
    validate_params,
)
from .quadrature import (
    DEFAULT_CFG,
    EndHint,
    Integrand1D,
    Integrand2D,
    QuadConfig,
    cumulative_integral,
    integrate,
    integrate_log_batch,
    integrate_log_batch_2d,
    log_window,
    tensor_integrate_2d,
)

REPRESENTATION_TOL = 1e-7
CONSTANT_ROUTE_TOL = 1e-9
# absolute floor for quadratures whose integrand underflows into subnormals
TINY = 1e-290
# the cumulative fast path integrates values that are themselves quadratures
_INNER_TOL = 0.02


class OperatorKind(str, Enum):
    HTILDE = "Htilde"
    H = "H"
    R = "R"
    RTILDE = "Rtilde"
    S = "S"
    STILDE = "Stilde"
    R_MOD = "R_mod"
    RTILDE_MOD = "Rtilde_mod"
    S_MOD = "S_mod"
    STILDE_MOD = "Stilde_mod"
    HARDY = "Hardy"
    DUAL_HARDY = "DualHardy"
    WEIGHTED_HARDY = "WeightedHardy"
    CESARO = "Cesaro"
    MULTI_WEIGHTED_HARDY = "MultiWeightedHardy"
    MULTI_CESARO = "MultiCesaro"

    @property
    def arity(self) -> int:
        return 1 if self in _LINEAR else 2

    @property
    def modified(self) -> bool:
        return self.value.endswith("_mod")

    @property
    def base(self) -> "OperatorKind":
        return OperatorKind(self.value[:-4]) if self.modified else self

    @property
    def radializes(self) -> bool:
        """True when the operator integrates its input over spheres first."""
        return self.base in (
            OperatorKind.HTILDE, OperatorKind.RTILDE, OperatorKind.STILDE,
            OperatorKind.HARDY, OperatorKind.DUAL_HARDY,
        )

    @property
    def kernel_arity(self) -> int:
        """Arity of the kernel profile phi the operator expects (0: none)."""
        if self in (OperatorKind.HARDY, OperatorKind.DUAL_HARDY):
            return 0
        if self.base is OperatorKind.STILDE:
            return 1
        return self.arity


_LINEAR = {"Htilde", "H", "Hardy", "DualHardy", "WeightedHardy", "Cesaro"}


def as_kind(kind) -> OperatorKind:
    if isinstance(kind, OperatorKind):
        return kind
    try:
        return OperatorKind(str(kind))
    except ValueError:
        raise ParamError(f"unknown operator kind {kind!r}") from None


class ConstantKind(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    C3T = "C3t"
    C4T = "C4t"
    C5T = "C5t"
    C6T = "C6t"
    C7 = "C7"
    C8 = "C8"
    C9 = "C9"
    C10 = "C10"
    C11 = "C11"
    C12 = "C12"
    C9T = "C9t"
    C10T = "C10t"
    C11T = "C11t"
    C12T = "C12t"
    HARDY = "hardy"
    DUAL_HARDY = "dual_hardy"
    WEIGHTED_HARDY = "weighted_hardy"
    CESARO = "cesaro"
    MULTI_WEIGHTED_HARDY = "multi_weighted_hardy"
    MULTI_CESARO = "multi_cesaro"

    @property
    def operator(self) -> OperatorKind:
        return _CONSTANT_OPERATOR[self.value.rstrip("t") if self.value[0] == "C" else self.value]

    @property
    def family(self) -> Family:
        if self.value[0] == "C" and int(self.value[1:].rstrip("t")) >= 7:
            return Family.COMPLEMENTARY
        return Family.LOCAL

    @property
    def sup_variant(self) -> bool:
        """The p~ = inf versions (written with a tilde over C)."""
        return self.value.endswith("t")


_CONSTANT_OPERATOR = {
    "C1": OperatorKind.HTILDE,
    "C2": OperatorKind.H,
    "C3": OperatorKind.R,
    "C4": OperatorKind.RTILDE,
    "C5": OperatorKind.S,
    "C6": OperatorKind.STILDE,
    "C7": OperatorKind.HTILDE,
    "C8": OperatorKind.H,
    "C9": OperatorKind.R_MOD,
    "C10": OperatorKind.RTILDE_MOD,
    "C11": OperatorKind.S_MOD,
    "C12": OperatorKind.STILDE_MOD,
    "hardy": OperatorKind.HARDY,
    "dual_hardy": OperatorKind.DUAL_HARDY,
    "weighted_hardy": OperatorKind.WEIGHTED_HARDY,
    "cesaro": OperatorKind.CESARO,
    "multi_weighted_hardy": OperatorKind.MULTI_WEIGHTED_HARDY,
    "multi_cesaro": OperatorKind.MULTI_CESARO,
}

_CONSTANT_ALIASES = {"C̃" + str(k): f"C{k}t" for k in (3, 4, 5, 6, 9, 10, 11, 12)}
_CONSTANT_ALIASES.update({f"Ctilde{k}": f"C{k}t" for k in (3, 4, 5, 6, 9, 10, 11, 12)})


def as_constant_kind(kind) -> ConstantKind:
    if isinstance(kind, ConstantKind):
        return kind
    name = _CONSTANT_ALIASES.get(str(kind), str(kind))
    try:
        return ConstantKind(name)
    except ValueError:
        raise ParamError(f"unknown constant kind {kind!r}") from None


def constant_for_operator(kind, family=Family.LOCAL, sup_variant: bool = False) -> ConstantKind:
    """The constant that bounds ``kind`` on the given family of spaces."""
    kind = as_kind(kind)
    for ck in ConstantKind:
        if ck.operator is kind and ck.family is Family(family) and ck.sup_variant == sup_variant:
            return ck
    # linear kinds share the same constant in the p~ = inf case
    for ck in ConstantKind:
        if ck.operator is kind and ck.family is Family(family) and not ck.sup_variant:
            return ck
    raise ParamError(f"no constant is attached to {kind.value} on {Family(family).value} spaces")


# ----------------------------------------------------------------------------
# reduced kernels


@dataclass(frozen=True)
class Reduced1:
    """K(t) of a linear operator, with its analytic metadata."""

    func: Callable
    hint0: EndHint
    hint_inf: EndHint
    breakpoints: Tuple[float, ...] = ()
    support: Tuple[float, float] = (0.0, math.inf)

    def __call__(self, t):
        return self.func(t)


@dataclass(frozen=True)
class Reduced2:
    """K(t1, t2) of a bilinear operator.

    ``curve_breaks(t_other)`` returns, for a fixed value of one variable,
    where K jumps in the other one (used for the composed argument of the
    Stilde kernel); the kernel is symmetric in that respect.
    """

    func: Callable
    hints0: Tuple[EndHint, EndHint]
    hints_inf: Tuple[EndHint, EndHint]
    breakpoints: Tuple[Tuple[float, ...], Tuple[float, ...]] = ((), ())
    supports: Tuple[Tuple[float, float], Tuple[float, float]] = ((0.0, math.inf), (0.0, math.inf))
    factors: Optional[Tuple[Reduced1, Reduced1]] = None
    curve_breaks: Optional[Callable] = None
    diagonal_breaks: Tuple[float, ...] = ()

    def __call__(self, t1, t2):
        return self.func(t1, t2)


def _check_kernel(kind: OperatorKind, kernel):
    need = kind.kernel_arity
    if need == 0:
        return
    if kernel is None:
        raise ArityMismatch(f"{kind.value} needs a kernel profile")
    ok = is_linear(kernel) if need == 1 else is_bilinear(kernel)
    if not ok:
        got = getattr(kernel, "arity", "?")
        raise ArityMismatch(f"{kind.value} needs a kernel of arity {need}, got arity {got}")


def _shift(h: EndHint, d: float) -> EndHint:
    return h.shifted(d)


def _radial_over_t(phi, c: float) -> Reduced1:
    """c * phi(t) / t."""
    return Reduced1(
        lambda t: c * phi(t) / t,
        _shift(phi.hint0, -1.0),
        _shift(phi.hint_inf, -1.0),
        tuple(phi.breakpoints),
        tuple(getattr(phi, "support", (0.0, math.inf))),
    )


def reduced_kernel_linear(kind, kernel, n: int) -> Reduced1:
    """Reduced kernel K with T(rho) = int K(t) g(rho/t) dt."""
    kind = as_kind(kind)
    if kind.arity != 1:
        raise ArityMismatch(f"{kind.value} is multilinear")
    _check_kernel(kind, kernel)
    if kind in (OperatorKind.HTILDE, OperatorKind.H):
        return _radial_over_t(kernel, sphere_area(n))
    if kind is OperatorKind.HARDY:
        # Phi = chi_{|x| > 1} / (nu_n |x|^n) in Htilde
        def hardy(t):
            t = np.asarray(t, dtype=float)
            inside = t > 1.0
            return np.where(inside, n * np.where(inside, t, 1.0) ** (-n - 1.0), 0.0)

        return Reduced1(hardy, EndHint.zero(), EndHint.power(-n - 1.0), (1.0,), (1.0, math.inf))
    if kind is OperatorKind.DUAL_HARDY:
        # Phi = chi_{|x| < 1} / nu_n in Htilde
        def dual(t):
            t = np.asarray(t, dtype=float)
            inside = (t < 1.0) & (t > 0)
            return np.where(inside, n / np.where(inside, t, 1.0), 0.0)

        return Reduced1(dual, EndHint.power(-1.0), EndHint.zero(), (1.0,), (0.0, 1.0))
    lo, hi = getattr(kernel, "support", (0.0, math.inf))
    if kind is OperatorKind.WEIGHTED_HARDY:
        # Phi(y) = (omega_n |y|)^{-1} phi(1/|y|) chi_{|y| > 1} in H
        def wh(t):
            t = np.asarray(t, dtype=float)
            inside = t > 1.0
            ts = np.where(inside, t, 2.0)
            return np.where(inside, kernel(1.0 / ts) / (ts * ts), 0.0)

        bps = sorted({1.0} | {1.0 / b for b in kernel.breakpoints if 0 < b < 1})
        sup = (max(1.0, 1.0 / hi) if hi > 0 else math.inf, 1.0 / lo if lo > 0 else math.inf)
        return Reduced1(wh, EndHint.zero(), _shift(_flip(kernel.hint0), -2.0), tuple(bps), sup)
    if kind is OperatorKind.CESARO:
        # Phi(y) = omega_n^{-1} |y|^{1-n} phi(|y|) chi_{|y| < 1} in H
        def ces(t):
            t = np.asarray(t, dtype=float)
            inside = (t < 1.0) & (t > 0)
            ts = np.where(inside, t, 0.5)
            return np.where(inside, kernel(ts) * ts ** (-float(n)), 0.0)

        bps = sorted({1.0} | {b for b in kernel.breakpoints if 0 < b < 1})
        return Reduced1(ces, _shift(kernel.hint0, -float(n)), EndHint.zero(), tuple(bps), (lo, min(hi, 1.0)))
    raise ParamError(f"no linear reduction for {kind.value}")


def _flip(h: EndHint) -> EndHint:
    """Hint of phi(1/t) at infinity from the hint of phi at 0."""
    return h if h.vanishes else EndHint.power(-h.exponent)


def reduced_kernel_bilinear(kind, kernel, dims: Sequence[int]) -> Reduced2:
    """Reduced kernel K with T(rho) = int int K(t1, t2) g1(rho/t1) g2(rho/t2) dt."""
    kind = as_kind(kind)
    if kind.arity != 2:
        raise ArityMismatch(f"{kind.value} is linear")
    _check_kernel(kind, kernel)
    n1, n2 = (int(d) for d in dims)
    N = n1 + n2
    w1, w2 = sphere_area(n1), sphere_area(n2)
    base = kind.base
    if base in (OperatorKind.R, OperatorKind.RTILDE):
        factors = None
        if kernel.factors is not None:
            factors = (_radial_over_t(kernel.factors[0], w1), _radial_over_t(kernel.factors[1], w2))

        def fR(t1, t2):
            return w1 * w2 * kernel(t1, t2) / (t1 * t2)

        return Reduced2(
            fR,
            tuple(_shift(h, -1.0) for h in kernel.hints0),
            tuple(_shift(h, -1.0) for h in kernel.hints_inf),
            kernel.breakpoints,
            kernel.supports,
            factors,
        )
    if base is OperatorKind.S:
        def fS(t1, t2):
            return w1 * w2 * kernel(t1, t2) * t1 ** (n1 - 1.0) * t2 ** (n2 - 1.0) * (t1 * t1 + t2 * t2) ** (-N / 2.0)

        return Reduced2(
            fS,
            (_shift(kernel.hints0[0], n1 - 1.0), _shift(kernel.hints0[1], n2 - 1.0)),
            (_shift(kernel.hints_inf[0], n1 - 1.0 - N), _shift(kernel.hints_inf[1], n2 - 1.0 - N)),
            kernel.breakpoints,
            kernel.supports,
        )
    if base is OperatorKind.STILDE:
        phi = kernel

        def fSt(t1, t2):
            s2 = t1 * t1 + t2 * t2
            return w1 * w2 * phi(t1 * t2 / np.sqrt(s2)) * t1 ** (n2 - 1.0) * t2 ** (n1 - 1.0) * s2 ** (-N / 2.0)

        cuts = np.array([c for c in phi.breakpoints if c > 0], dtype=float)

        def curve(t_other):
            t_other = np.asarray(t_other, dtype=float).reshape(-1, 1)
            if cuts.size == 0:
                return np.full((t_other.shape[0], 1), np.nan)
            d = t_other * t_other - cuts[None, :] ** 2
            with np.errstate(invalid="ignore", divide="ignore"):
                return np.where(d > 0, cuts[None, :] * t_other / np.sqrt(np.where(d > 0, d, 1.0)), np.nan)

        lo = getattr(phi, "support", (0.0, math.inf))[0]
        k0 = phi.hint0
        return Reduced2(
            fSt,
            (_shift(k0, n2 - 1.0), _shift(k0, n1 - 1.0)),
            (EndHint.power(-n1 - 1.0), EndHint.power(-n2 - 1.0)),
            ((), ()),
            ((lo, math.inf), (lo, math.inf)),
            None,
            curve if cuts.size else None,
            tuple(math.sqrt(2.0) * c for c in cuts),
        )
    if base is OperatorKind.MULTI_WEIGHTED_HARDY:
        def fMH(t1, t2):
            inside = (t1 > 1.0) & (t2 > 1.0)
            a1, a2 = np.where(inside, t1, 2.0), np.where(inside, t2, 2.0)
            return np.where(inside, kernel(1.0 / a1, 1.0 / a2) / (a1 * a1 * a2 * a2), 0.0)

        factors = None
        if kernel.factors is not None:
            factors = tuple(reduced_kernel_linear(OperatorKind.WEIGHTED_HARDY, k, 2) for k in kernel.factors)
        bps = tuple(tuple(sorted({1.0} | {1.0 / b for b in kernel.breakpoints[i] if 0 < b < 1})) for i in (0, 1))
        sups = []
        for lo, hi in kernel.supports:
            sups.append((max(1.0, 1.0 / hi) if hi > 0 else math.inf, 1.0 / lo if lo > 0 else math.inf))
        return Reduced2(
            fMH,
            (EndHint.zero(), EndHint.zero()),
            tuple(_shift(_flip(h), -2.0) for h in kernel.hints0),
            bps,
            tuple(sups),
            factors,
        )
    if base is OperatorKind.MULTI_CESARO:
        def fMC(t1, t2):
            inside = (t1 < 1.0) & (t2 < 1.0) & (t1 > 0) & (t2 > 0)
            a1, a2 = np.where(inside, t1, 0.5), np.where(inside, t2, 0.5)
            return np.where(inside, kernel(a1, a2) * a1 ** (-float(n1)) * a2 ** (-float(n2)), 0.0)

        factors = None
        if kernel.factors is not None:
            factors = (
                reduced_kernel_linear(OperatorKind.CESARO, kernel.factors[0], n1),
                reduced_kernel_linear(OperatorKind.CESARO, kernel.factors[1], n2),
            )
        bps = tuple(tuple(sorted({1.0} | {b for b in kernel.breakpoints[i] if 0 < b < 1})) for i in (0, 1))
        sups = tuple((lo, min(hi, 1.0)) for lo, hi in kernel.supports)
        return Reduced2(
            fMC,
            (_shift(kernel.hints0[0], -float(n1)), _shift(kernel.hints0[1], -float(n2))),
            (EndHint.zero(), EndHint.zero()),
            bps,
            sups,
            factors,
        )
    raise ParamError(f"no bilinear reduction for {kind.value}")


# ----------------------------------------------------------------------------
# output metadata


def _conv_hint(g: EndHint, k: EndHint, at_inf: bool) -> EndHint:
    """Hint of T = int K(t) g(rho/t) dt from the hints of g and K at one end."""
    if g.vanishes and k.vanishes:
        return EndHint.zero() if g.kind == "zero" and k.kind == "zero" else EndHint.fast()
    if g.vanishes:
        return EndHint.power(k.exponent + 1.0)
    if k.vanishes:
        return EndHint.power(g.exponent)
    if at_inf:
        return EndHint.power(max(g.exponent, k.exponent + 1.0))
    return EndHint.power(min(g.exponent, k.exponent + 1.0))


def _sum_hints(a: EndHint, b: EndHint) -> EndHint:
    if a.kind == "zero" or b.kind == "zero":
        return EndHint.zero()
    if a.kind == "fast" or b.kind == "fast":
        return EndHint.fast()
    return EndHint.power(a.exponent + b.exponent)


def _product_breaks(a: Sequence[float], b: Sequence[float], cap: int = 48) -> Tuple[float, ...]:
    out = set()
    for x in a:
        for y in b:
            v = x * y
            if v > 0 and math.isfinite(v):
                out.add(v)
    out.update(x for x in list(a) + list(b) if x > 0 and math.isfinite(x))
    vals = sorted(out)
    if len(vals) > cap:
        idx = np.linspace(0, len(vals) - 1, cap).round().astype(int)
        vals = [vals[i] for i in idx]
    return tuple(vals)


def _support_product(sk, sg):
    return (sk[0] * sg[0], sk[1] * sg[1] if math.isfinite(sk[1]) and math.isfinite(sg[1]) else math.inf)


# ----------------------------------------------------------------------------
# output profiles


class OperatorProfile(RadialProfile):
    """Radial output of an operator, evaluated by quadrature on demand."""

    def __init__(self, evaluator, hint0, hint_inf, breakpoints, support, label):
        self._eval = evaluator
        self.hint0, self.hint_inf = hint0, hint_inf
        self.breakpoints = tuple(breakpoints)
        self.support = support
        self.label = label

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        flat = rho.reshape(-1)
        out = np.zeros_like(flat)
        pos = flat > 0
        if pos.any():
            out[pos] = self._eval(flat[pos])
        return out.reshape(rho.shape)

    def to_dict(self):
        return {"variant": "operator_output", "operator": self.label}


def _power_cutoff_parts(g: RadialProfile):
    """(coef, beta, side) when g is a (scaled) power cutoff, else None."""
    coef = 1.0
    while isinstance(g, Scaled):
        coef *= g.c
        g = g.inner
    if isinstance(g, PowerCutoff):
        return coef * g.coef, g.beta, g.side
    return None


def _screen_rates(k0: EndHint, kinf: EndHint, g: RadialProfile):
    """Tail rates in s = log t of K(e^s) e^s g(rho e^{-s})."""
    rate0 = k0.at_zero() + 1.0 - g.hint_inf.at_inf()
    rate1 = kinf.at_inf() + 1.0 - g.hint0.at_zero()
    if not rate0 > 0:
        raise DivergentIntegral("operator integral diverges as t -> 0 (input too large at infinity)")
    if not rate1 < 0:
        raise DivergentIntegral("operator integral diverges as t -> inf (input too large at 0)")
    return rate0, rate1


def _item_windows(v, K_bps, g: RadialProfile, k_support, cfg: QuadConfig):
    """Per-radius windows, tail rates flags and breakpoints in s = log t."""
    S0, S1 = log_window(cfg, K_bps)
    gb = np.array([math.log(b) for b in g.breakpoints if b > 0 and math.isfinite(b)])
    kb = np.array([math.log(b) for b in K_bps if b > 0 and math.isfinite(b)])
    M = v.size
    lo = np.full(M, S0)
    hi = np.full(M, S1)
    if gb.size:
        shifted = v[:, None] - gb[None, :]
        lo = np.minimum(lo, shifted.min(axis=1) - 5.0)
        hi = np.maximum(hi, shifted.max(axis=1) + 5.0)
    trim_lo = np.zeros(M, dtype=bool)
    trim_hi = np.zeros(M, dtype=bool)
    klo, khi = k_support
    if klo > 0:
        a = math.log(klo)
        trim_lo |= a >= lo
        lo = np.maximum(lo, a)
    if math.isfinite(khi):
        b = math.log(khi)
        trim_hi |= b <= hi
        hi = np.minimum(hi, b)
    glo, ghi = g.support
    if math.isfinite(ghi):
        a = v - math.log(ghi)
        trim_lo |= a >= lo
        lo = np.maximum(lo, a)
    if glo > 0:
        b = v - math.log(glo)
        trim_hi |= b <= hi
        hi = np.minimum(hi, b)
    empty = hi <= lo
    hi = np.where(empty, lo, hi)
    parts = []
    if kb.size:
        parts.append(np.broadcast_to(kb, (M, kb.size)))
    if gb.size:
        parts.append(v[:, None] - gb[None, :])
    breaks = np.concatenate(parts, axis=1) if parts else None
    return lo, hi, trim_lo | empty, trim_hi | empty, breaks


def _eval_linear_general(K: Reduced1, g: RadialProfile, rho, cfg: QuadConfig):
    if isinstance(g, Combination) and len(g.terms) > 1:
        # term by term: the log-variable tail model assumes a single power rate
        return sum(c * _eval_linear_general(K, gk, rho, cfg) for c, gk in g.terms)
    v = np.log(rho)
    rate0, rate1 = _screen_rates(K.hint0, K.hint_inf, g)
    lo, hi, tlo, thi, breaks = _item_windows(v, K.breakpoints, g, K.support, cfg)
    r0 = np.where(tlo, math.inf, rate0)
    r1 = np.where(thi, -math.inf, rate1)

    def h(j, s):
        t = np.exp(s)
        return K(t) * t * g(rho[j][:, None] / t)

    res = integrate_log_batch(
        h, lo, hi, r0, r1, breaks,
        rel_tol=0.1 * cfg.rel_tol, abs_tol=TINY, init_width=4.0, max_panels=cfg.max_subdivisions,
    )
    if not np.all(res.converged) or not np.all(np.isfinite(res.values)):
        raise NonConvergence("operator quadrature did not converge")
    return res.values


def _eval_bilinear_general(K: Reduced2, g1: RadialProfile, g2: RadialProfile, rho, cfg: QuadConfig):
    v = np.log(rho)
    ra = _screen_rates(K.hints0[0], K.hints_inf[0], g1)
    rb = _screen_rates(K.hints0[1], K.hints_inf[1], g2)
    lo1, hi1, tl1, th1, br1 = _item_windows(v, K.breakpoints[0], g1, K.supports[0], cfg)
    lo2, hi2, tl2, th2, br2 = _item_windows(v, K.breakpoints[1], g2, K.supports[1], cfg)
    empty = (hi1 <= lo1) | (hi2 <= lo2)
    hi1 = np.where(empty, lo1, hi1)
    hi2 = np.where(empty, lo2, hi2)
    rates1 = (np.where(tl1 | empty, math.inf, ra[0]), np.where(th1 | empty, -math.inf, ra[1]))
    rates2 = (np.where(tl2 | empty, math.inf, rb[0]), np.where(th2 | empty, -math.inf, rb[1]))

    def h(j, u1, u2):
        t1, t2 = np.exp(u1), np.exp(u2)
        return K(t1, t2) * t1 * t2 * g1(rho[j] / t1) * g2(rho[j] / t2)

    ib = None
    if K.curve_breaks is not None:
        def ib(j, u2):
            tb = K.curve_breaks(np.exp(u2))
            with np.errstate(invalid="ignore", divide="ignore"):
                return np.log(tb)

    res = integrate_log_batch_2d(
        h, v.size, (lo1, hi1), (lo2, hi2), rates1, rates2, br1, br2, ib,
        rel_tol=0.1 * cfg.rel_tol, abs_tol=TINY, init_width=4.0, max_panels=cfg.max_subdivisions,
    )
    if not np.all(res.converged) or not np.all(np.isfinite(res.values)):
        raise NonConvergence("bilinear operator quadrature did not converge")
    return res.values


# fast path: power-cutoff inputs turn T into a cumulative integral


def _measured_log_slope(f, x, step=0.5):
    a, b = float(f(np.array([x]))[0]), float(f(np.array([x + step]))[0])
    if a > 0 and b > 0:
        return (math.log(b) - math.log(a)) / step
    return math.nan


class _CumulativeOutput:
    """T(rho) = coef * rho^{beta_sum} * W(log rho) with W a cumulative integral of w."""

    def __init__(self, w, coef, beta_sum, side, a, b, breaks, rate_hint, cfg, fallback):
        self.coef, self.beta_sum, self.side = coef, beta_sum, side
        self.a, self.b, self.fallback = a, b, fallback
        outer = side == "outer"
        start = 0.0
        edge = a if outer else b
        if not math.isinf(rate_hint):
            # tail beyond the window: w ~ exp(rate (m - edge))
            slope = _measured_log_slope(w, edge, 0.5 if outer else -0.5)
            rate = slope if math.isfinite(slope) and (slope > 0) == outer else rate_hint
            if outer and not rate > 0 or (not outer and not rate < 0):
                raise DivergentIntegral("operator output diverges")
            w_edge = float(w(np.array([edge]))[0])
            start = w_edge / abs(rate)
        self.W, _ = cumulative_integral(
            w, a, b, breaks, start, outer, 0.1 * cfg.rel_tol, 20 * cfg.max_subdivisions
        )

    def __call__(self, rho):
        v = np.log(rho)
        inside = (v >= self.a) & (v <= self.b)
        out = np.empty_like(v)
        if inside.any():
            vi = v[inside]
            out[inside] = self.coef * np.exp(self.beta_sum * vi) * self.W(vi)
        if (~inside).any():
            out[~inside] = self.fallback(rho[~inside])
        return out


def _fast_window(cfg: QuadConfig, T_breaks):
    U0, U1 = log_window(cfg, T_breaks)
    return U0 - 10.0, U1 + 10.0


def _fast_linear(K: Reduced1, parts, cfg, T_breaks, fallback):
    coef, beta, side = parts
    outer = side == "outer"
    a, b = _fast_window(cfg, T_breaks)
    klo, khi = K.support
    trimmed_lo = klo > 0 and math.log(klo) > a
    trimmed_hi = math.isfinite(khi) and math.log(khi) < b
    if outer:
        rate_hint = math.inf if trimmed_lo else K.hint0.at_zero() + 1.0 - beta
    else:
        rate_hint = -math.inf if trimmed_hi else K.hint_inf.at_inf() + 1.0 - beta
    if klo > 0:
        a = max(a, math.log(klo)) if outer else a
    if math.isfinite(khi):
        b = min(b, math.log(khi)) if not outer else b

    def w(m):
        t = np.exp(m)
        return K(t) * t ** (1.0 - beta)

    bps = [math.log(x) for x in K.breakpoints if x > 0]
    if not b > a:
        return None
    return _CumulativeOutput(w, coef, beta, side, a, b, bps, rate_hint, cfg, fallback)


def _fast_bilinear(K: Reduced2, p1, p2, cfg, T_breaks, fallback):
    (c1, b1, side), (c2, b2, _) = p1, p2
    outer = side == "outer"
    betas = (b1, b2)
    a, b = _fast_window(cfg, T_breaks)
    S = [log_window(cfg, K.breakpoints[i]) for i in (0, 1)]
    S = [(s0 - 10.0, s1 + 10.0) for s0, s1 in S]
    sup_lo = [math.log(s[0]) if s[0] > 0 else -math.inf for s in K.supports]
    sup_hi = [math.log(s[1]) if math.isfinite(s[1]) else math.inf for s in K.supports]
    kb = [np.array([math.log(x) for x in K.breakpoints[i] if x > 0]) for i in (0, 1)]
    if outer:
        a = max(a, max(sup_lo))
        rates = [K.hints0[i].at_zero() + 1.0 - betas[i] for i in (0, 1)]
        for i in (0, 1):
            if not (sup_lo[i] > S[i][0]) and not rates[i] > 0:
                raise DivergentIntegral("operator integral diverges at t -> 0")
        rate_hint = math.inf if max(sup_lo) > a - 1e-12 and max(sup_lo) > -math.inf else sum(rates)
    else:
        b = min(b, min(sup_hi))
        rates = [K.hints_inf[i].at_inf() + 1.0 - betas[i] for i in (0, 1)]
        for i in (0, 1):
            if not (sup_hi[i] < S[i][1]) and not rates[i] < 0:
                raise DivergentIntegral("operator integral diverges at t -> inf")
        rate_hint = -math.inf if min(sup_hi) < b + 1e-12 and min(sup_hi) < math.inf else sum(rates)
    if not b > a:
        return None

    def khat(s1, s2):
        t1, t2 = np.exp(s1), np.exp(s2)
        return K(t1, t2) * t1 ** (1.0 - b1) * t2 ** (1.0 - b2)

    def w(m):
        shape = np.shape(m)
        m = np.asarray(m, dtype=float).reshape(-1)
        P = m.size
        # items 0..P-1 integrate over s2 with s1 = m; items P..2P-1 over s1 with s2 = m
        fixed = np.concatenate([m, m])
        axis = np.concatenate([np.ones(P, dtype=int), np.zeros(P, dtype=int)])  # axis being integrated
        lo = np.where(axis == 1, S[1][0], S[0][0])
        hi = np.where(axis == 1, S[1][1], S[0][1])
        slo = np.where(axis == 1, sup_lo[1], sup_lo[0])
        shi = np.where(axis == 1, sup_hi[1], sup_hi[0])
        if outer:
            hi = np.minimum(fixed, shi)
            r1 = np.full(2 * P, -math.inf)
            tl = slo > lo
            lo = np.maximum(lo, slo)
            r0 = np.where(tl, math.inf, np.where(axis == 1, rates[1], rates[0]))
        else:
            lo = np.maximum(fixed, slo)
            r0 = np.full(2 * P, math.inf)
            th = shi < hi
            hi = np.minimum(hi, shi)
            r1 = np.where(th, -math.inf, np.where(axis == 1, rates[1], rates[0]))
        empty = hi <= lo
        hi = np.where(empty, lo, hi)
        r0 = np.where(empty, math.inf, r0)
        r1 = np.where(empty, -math.inf, r1)
        parts = []
        nb = max(kb[0].size, kb[1].size)
        if nb:
            bk = np.full((2 * P, nb), np.nan)
            bk[axis == 1, : kb[1].size] = kb[1]
            bk[axis == 0, : kb[0].size] = kb[0]
            parts.append(bk)
        if K.curve_breaks is not None:
            with np.errstate(invalid="ignore", divide="ignore"):
                parts.append(np.log(K.curve_breaks(np.exp(fixed))))
        breaks = np.concatenate(parts, axis=1) if parts else None

        def h(j, s):
            f = fixed[j][:, None]
            return np.where(axis[j][:, None] == 1, khat(f, s), khat(s, f))

        res = integrate_log_batch(
            h, lo, hi, r0, r1, breaks,
            rel_tol=_INNER_TOL * cfg.rel_tol, abs_tol=TINY, init_width=4.0, max_panels=cfg.max_subdivisions,
        )
        if not np.all(res.converged) or not np.all(np.isfinite(res.values)):
            bad = ~res.converged | ~np.isfinite(res.values)
            raise NonConvergence(
                f"bilinear operator quadrature did not converge {fixed[bad][:4]} {axis[bad][:4]} {res.values[bad][:4]} {res.errors[bad][:4]} {lo[bad][:4]} {hi[bad][:4]}"
            )
        return (res.values[:P] + res.values[P:]).reshape(shape)

    bps = sorted(set(np.concatenate(kb).tolist()) | {math.log(x) for x in K.diagonal_breaks if x > 0})
    return _CumulativeOutput(w, c1 * c2, b1 + b2, side, a, b, bps, rate_hint, cfg, fallback)


# ----------------------------------------------------------------------------
# application


def _dimension(f, n: Optional[int]) -> int:
    if isinstance(f, SeparableFunction):
        if n is not None and n != f.n:
            raise ParamError(f"dimension mismatch: n = {n}, input lives in {f.n}")
        return f.n
    if n is None:
        raise ParamError("radial inputs need the dimension n")
    return int(n)


def _split(f):
    if isinstance(f, SeparableFunction):
        return f.radial, f.angular
    if isinstance(f, RadialProfile):
        return f, None
    raise ParamError(f"expected a radial profile or separable function, got {type(f).__name__}")


def _finish(T: RadialProfile, angular, r_points):
    if r_points is not None:
        r = np.asarray(r_points, dtype=float)
        if r.ndim != 1 or r.size < 2 or np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise ParamError("r_points must be an increasing list of positive radii")
        T = Tabulated(r, T(r))
    if angular is None or (angular.is_constant and angular.c == 1.0):
        return T
    return SeparableFunction(T, angular)


def apply_linear(kind, kernel, f, r_points=None, *, n: Optional[int] = None, cfg: QuadConfig = DEFAULT_CFG,
                 fast: bool = True):
    """Output of a linear operator on a radial or separable input.

    Returns a radial profile (or a separable function when the operator keeps
    the angular factor).  With ``r_points`` the output is tabulated there and
    interpolated monotonically in between; otherwise it is evaluated by
    quadrature wherever it is called.
    """
    kind = as_kind(kind)
    if kind.arity != 1:
        raise ArityMismatch(f"{kind.value} takes {kind.arity} inputs")
    n = _dimension(f, n)
    K = reduced_kernel_linear(kind, kernel, n)
    if kind.radializes:
        g, ang = radialize(f), None
    else:
        g, ang = _split(f)
    _screen_rates(K.hint0, K.hint_inf, g)

    def general(rho):
        return _eval_linear_general(K, g, rho, cfg)

    breaks = _product_breaks(K.breakpoints, g.breakpoints)
    evaluator = general
    parts = _power_cutoff_parts(g) if fast else None
    if parts is not None:
        fast_eval = _fast_linear(K, parts, cfg, breaks, general)
        if fast_eval is not None:
            evaluator = fast_eval
    T = OperatorProfile(
        evaluator,
        _conv_hint(g.hint0, K.hint0, False),
        _conv_hint(g.hint_inf, K.hint_inf, True),
        breaks,
        _support_product(K.support, g.support),
        kind.value,
    )
    if kind in (OperatorKind.HARDY, OperatorKind.DUAL_HARDY, OperatorKind.WEIGHTED_HARDY, OperatorKind.CESARO):
        check = np.asarray(r_points, dtype=float) if r_points is not None else np.array([0.5, 1.0, 2.0, 7.0])
        _check_representation(kind, kernel, g, n, T, check, cfg)
    return _finish(T, ang, r_points)


def apply_multilinear(kind, kernel, f1, f2=None, r_points=None, *, n: Optional[int] = None, dims=None,
                      cfg: QuadConfig = DEFAULT_CFG, fast: bool = True, use_separable: bool = True):
    """Output of a bilinear operator on two radial (or separable) inputs.

    ``f1`` may also be a sequence holding all inputs; only m = 2 is
    implemented.
    """
    kind = as_kind(kind)
    if kind.arity != 2:
        raise ArityMismatch(f"{kind.value} takes one input")
    fs = tuple(f1) if isinstance(f1, (list, tuple)) else (f1, f2)
    if len(fs) != 2 or any(f is None for f in fs):
        raise UnsupportedArity(f"operator application is implemented for m = 2 inputs, got {len(fs)}")
    f1, f2 = fs
    if isinstance(f1, SeparableFunction):
        n = _dimension(f1, n)
    if isinstance(f2, SeparableFunction):
        n = _dimension(f2, n)
    if n is None and dims is None:
        raise ParamError("radial inputs need the dimension n")
    dims = tuple(dims) if dims is not None else (n, n)
    if kind.modified and any(d != n for d in dims):
        raise ParamError("modified operators use n_i = n")
    K = reduced_kernel_bilinear(kind, kernel, dims)
    if kind.radializes:
        g1, g2, ang = radialize(f1), radialize(f2), None
    else:
        (g1, h1), (g2, h2) = _split(f1), _split(f2)
        if h1 is None and h2 is None:
            ang = None
        else:
            h1 = h1 or ConstantAngular(n, 1.0)
            h2 = h2 or ConstantAngular(n, 1.0)
            ang = ProductAngular(h1, h2)
    for ax, g in ((0, g1), (1, g2)):
        _screen_rates(K.hints0[ax], K.hints_inf[ax], g)

    if K.factors is not None and use_separable:
        T1 = apply_linear_reduced(K.factors[0], g1, cfg, fast)
        T2 = apply_linear_reduced(K.factors[1], g2, cfg, fast)

        def evaluator(rho):
            return T1(rho) * T2(rho)

        hint0 = _sum_hints(T1.hint0, T2.hint0)
        hint_inf = _sum_hints(T1.hint_inf, T2.hint_inf)
        breaks = tuple(sorted(set(T1.breakpoints) | set(T2.breakpoints)))
        support = (max(T1.support[0], T2.support[0]), min(T1.support[1], T2.support[1]))
    else:
        def general(rho):
            return _eval_bilinear_general(K, g1, g2, rho, cfg)

        hint0 = _sum_hints(_conv_hint(g1.hint0, K.hints0[0], False), _conv_hint(g2.hint0, K.hints0[1], False))
        hint_inf = _sum_hints(
            _conv_hint(g1.hint_inf, K.hints_inf[0], True), _conv_hint(g2.hint_inf, K.hints_inf[1], True)
        )
        breaks = tuple(sorted(
            set(_product_breaks(K.breakpoints[0], g1.breakpoints))
            | set(_product_breaks(K.breakpoints[1], g2.breakpoints))
            | set(K.diagonal_breaks)
        ))
        s1 = _support_product(K.supports[0], g1.support)
        s2 = _support_product(K.supports[1], g2.support)
        support = (max(s1[0], s2[0]), min(s1[1], s2[1]))
        evaluator = general
        p1 = _power_cutoff_parts(g1) if fast else None
        p2 = _power_cutoff_parts(g2) if fast else None
        if p1 is not None and p2 is not None and p1[2] == p2[2]:
            fe = _fast_bilinear(K, p1, p2, cfg, breaks, general)
            if fe is not None:
                evaluator = fe
    T = OperatorProfile(evaluator, hint0, hint_inf, breaks, support, kind.value)
    return _finish(T, ang, r_points)


def apply_linear_reduced(K: Reduced1, g: RadialProfile, cfg: QuadConfig = DEFAULT_CFG, fast: bool = True):
    """T(rho) = int K(t) g(rho/t) dt as an OperatorProfile."""
    _screen_rates(K.hint0, K.hint_inf, g)

    def general(rho):
        return _eval_linear_general(K, g, rho, cfg)

    breaks = _product_breaks(K.breakpoints, g.breakpoints)
    evaluator = general
    parts = _power_cutoff_parts(g) if fast else None
    if parts is not None:
        fe = _fast_linear(K, parts, cfg, breaks, general)
        if fe is not None:
            evaluator = fe
    return OperatorProfile(
        evaluator,
        _conv_hint(g.hint0, K.hint0, False),
        _conv_hint(g.hint_inf, K.hint_inf, True),
        breaks,
        _support_product(K.support, g.support),
        "reduced",
    )


# ----------------------------------------------------------------------------
# direct forms of the classical operators


def apply_direct(kind, g: RadialProfile, n: int, kernel=None, rho=None, cfg: QuadConfig = DEFAULT_CFG):
    """Classical operators evaluated from their own definitions at radii ``rho``.

    Hardy: ball average n rho^{-n} int_0^rho s^{n-1} g(s) ds.
    DualHardy: n int_rho^inf g(s) / s ds.
    WeightedHardy: int_0^1 phi(t) g(t rho) dt.
    Cesaro: int_0^1 g(rho / t) t^{-n} phi(t) dt.
    """
    kind = as_kind(kind)
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    out = np.empty_like(rho)
    for i, r in enumerate(rho):
        if kind is OperatorKind.HARDY:
            f = Integrand1D(lambda s: s ** (n - 1.0) * g(s), _shift(g.hint0, n - 1.0), EndHint.zero(), tuple(g.breakpoints))
            out[i] = n * r ** (-float(n)) * integrate(f, (0.0, r), cfg).value
        elif kind is OperatorKind.DUAL_HARDY:
            f = Integrand1D(lambda s: g(s) / s, EndHint.zero(), _shift(g.hint_inf, -1.0), tuple(g.breakpoints))
            out[i] = n * integrate(f, (r, math.inf), cfg).value
        elif kind is OperatorKind.WEIGHTED_HARDY:
            f = Integrand1D(
                lambda t, r=r: kernel(t) * g(t * r),
                _sum_hints(kernel.hint0, g.hint0), EndHint.zero(),
                tuple(kernel.breakpoints) + tuple(b / r for b in g.breakpoints),
            )
            out[i] = integrate(f, (0.0, 1.0), cfg).value
        elif kind is OperatorKind.CESARO:
            f = Integrand1D(
                lambda t, r=r: kernel(t) * g(r / t) * t ** (-float(n)),
                _sum_hints(_shift(kernel.hint0, -float(n)), _flip(g.hint_inf)), EndHint.zero(),
                tuple(kernel.breakpoints) + tuple(r / b for b in g.breakpoints),
            )
            out[i] = integrate(f, (0.0, 1.0), cfg).value
        else:
            raise ParamError(f"{kind.value} has no separate direct form")
    return out


def _check_representation(kind, kernel, g, n, T, radii, cfg):
    direct = apply_direct(kind, g, n, kernel, radii, cfg)
    via = T(radii)
    scale = np.maximum(np.abs(direct), 1e-300)
    bad = np.abs(via - direct) > REPRESENTATION_TOL * scale
    bad &= np.abs(via - direct) > 1e-14 * np.max(np.abs(direct), initial=0.0)
    if bad.any():
        i = int(np.argmax(bad))
        raise RepresentationMismatch(
            f"{kind.value}: direct {direct[i]!r} vs Hausdorff form {via[i]!r} at rho = {radii[i]!r}"
        )


# ----------------------------------------------------------------------------
# sharp constants


def _sigmas(kind: ConstantKind, params):
    vp = validate_params(params)
    raw = vp.raw
    op = kind.operator
    if op.arity == 1:
        if not isinstance(raw, SpaceParams):
            raise ParamError(f"{kind.value} needs single-space parameters")
        s = raw
        if s.family is not kind.family:
            raise ParamError(f"{kind.value} lives on {kind.family.value} spaces, got {s.family.value}")
        return s, (scaling_index(s),)
    if not isinstance(raw, MultilinearParams):
        raise ParamError(f"{kind.value} needs multilinear parameters")
    s = raw.space
    if s.family is not kind.family:
        raise ParamError(f"{kind.value} lives on {kind.family.value} spaces, got {s.family.value}")
    inf_factors = [raw.factors[i].p_tilde is INF for i in range(raw.m)]
    if kind.sup_variant and not all(inf_factors):
        raise ParamError(f"{kind.value} is the p~_i = inf constant")
    if kind.value[0] == "C" and not kind.sup_variant and any(inf_factors):
        raise ParamError(f"{kind.value} needs finite p~_i; use the {kind.value}t variant")
    return raw, tuple(scaling_index(raw.factor_space(i)) for i in range(raw.m))


def _kernel_integral_1d(K: Reduced1, sigma: float, cfg: QuadConfig) -> float:
    f = Integrand1D(
        lambda t: K(t) * t ** sigma,
        _shift(K.hint0, sigma), _shift(K.hint_inf, sigma), K.breakpoints,
    )
    return _guard(lambda: integrate(f, None, cfg).value)


def _kernel_integral_2d(K: Reduced2, sig, cfg: QuadConfig, use_separable: bool = True) -> float:
    if K.factors is not None and use_separable:
        return _kernel_integral_1d(K.factors[0], sig[0], cfg) * _kernel_integral_1d(K.factors[1], sig[1], cfg)
    f = Integrand2D(
        lambda t1, t2: K(t1, t2) * t1 ** sig[0] * t2 ** sig[1],
        tuple(_shift(K.hints0[i], sig[i]) for i in (0, 1)),
        tuple(_shift(K.hints_inf[i], sig[i]) for i in (0, 1)),
        K.breakpoints,
        None,
        K.curve_breaks,
    )
    return _guard(lambda: tensor_integrate_2d(f, cfg, use_separable=False).value)


def _guard(fn):
    try:
        v = fn()
    except DivergentIntegral as e:
        raise DivergentConstant(f"the constant is infinite, so the operator is unbounded ({e})") from None
    if not math.isfinite(v):
        raise DivergentConstant("the constant is infinite, so the operator is unbounded")
    return v


def sharp_constant(kind, params, kernel=None, cfg: QuadConfig = DEFAULT_CFG, dims=None) -> float:
    """The sharp operator-norm constant.

    Every constant is int K(t) prod t_i^{sigma_i} dt with K the reduced kernel
    and sigma_i the scaling indices.  The classical operators are also
    computed from their own closed or direct forms; the two routes must agree
    within 1e-9.
    """
    kind = as_constant_kind(kind)
    raw, sig = _sigmas(kind, params)
    op = kind.operator
    n = raw.n
    if op.arity == 1:
        K = reduced_kernel_linear(op, kernel, n)
        via_kernel_fn = lambda: _kernel_integral_1d(K, sig[0], cfg)
        direct = _direct_constant_linear(kind, kernel, n, sig[0], cfg)
        if direct is None:
            return via_kernel_fn()
        via = via_kernel_fn()
        _compare_routes(kind, direct, via)
        return direct
    if dims is None:
        dims = raw.factor_dims() if hasattr(raw, "factor_dims") else (n, n)
    dims = tuple(dims)
    if len(dims) != 2 or raw.m != 2:
        return _separable_general_m(kind, raw, kernel, sig, dims, cfg)
    K = reduced_kernel_bilinear(op, kernel, dims)
    via = _kernel_integral_2d(K, sig, cfg)
    direct = _direct_constant_bilinear(kind, kernel, dims, sig, cfg)
    if direct is None:
        return via
    _compare_routes(kind, direct, via)
    return direct


def _compare_routes(kind, direct, via):
    if abs(direct - via) > CONSTANT_ROUTE_TOL * max(abs(direct), 1e-300):
        raise RepresentationMismatch(f"{kind.value}: direct value {direct!r} vs kernel route {via!r}")


def _direct_constant_linear(kind: ConstantKind, kernel, n: int, sigma: float, cfg: QuadConfig):
    if kind is ConstantKind.HARDY:
        if not n - sigma > 0:
            raise DivergentConstant(f"hardy constant needs n - sigma > 0, got {n - sigma:g}")
        return n / (n - sigma)
    if kind is ConstantKind.DUAL_HARDY:
        if not sigma > 0:
            raise DivergentConstant(f"dual Hardy constant needs lambda < (n + alpha)/p~ (sigma = {sigma:g})")
        return n / sigma
    if kind is ConstantKind.WEIGHTED_HARDY:
        return _unit_interval_integral(kernel, -sigma, cfg)
    if kind is ConstantKind.CESARO:
        return _unit_interval_integral(kernel, sigma - n, cfg)
    return None


def _unit_interval_integral(phi, expo: float, cfg: QuadConfig) -> float:
    """int_0^1 phi(t) t^expo dt."""
    f = Integrand1D(
        lambda t: np.where(t < 1.0, phi(np.minimum(t, 1.0)) * t ** expo, 0.0),
        _shift(phi.hint0, expo), EndHint.zero(),
        tuple(b for b in phi.breakpoints if 0 < b < 1) + (1.0,),
    )
    return _guard(lambda: integrate(f, None, cfg).value)


def _direct_constant_bilinear(kind: ConstantKind, kernel, dims, sig, cfg: QuadConfig):
    if kind not in (ConstantKind.MULTI_WEIGHTED_HARDY, ConstantKind.MULTI_CESARO):
        return None
    e = (-sig[0], -sig[1]) if kind is ConstantKind.MULTI_WEIGHTED_HARDY else (sig[0] - dims[0], sig[1] - dims[1])
    if kernel.factors is not None:
        return _unit_interval_integral(kernel.factors[0], e[0], cfg) * _unit_interval_integral(
            kernel.factors[1], e[1], cfg
        )
    f = Integrand2D(
        lambda t1, t2: np.where(
            (t1 < 1.0) & (t2 < 1.0),
            kernel(np.minimum(t1, 1.0), np.minimum(t2, 1.0)) * t1 ** e[0] * t2 ** e[1],
            0.0,
        ),
        tuple(_shift(kernel.hints0[i], e[i]) for i in (0, 1)),
        (EndHint.zero(), EndHint.zero()),
        tuple(tuple(b for b in kernel.breakpoints[i] if 0 < b < 1) + (1.0,) for i in (0, 1)),
    )
    return _guard(lambda: tensor_integrate_2d(f, cfg, use_separable=False).value)


def _separable_general_m(kind, raw, kernel, sig, dims, cfg):
    """Constants for m != 2 when the kernel is a product of 1-D profiles."""
    factors = getattr(kernel, "factors", None)
    if factors is None or len(factors) != raw.m:
        raise UnsupportedArity("constants for m != 2 need a separable kernel with one factor per input")
    op = kind.operator.base
    if op not in (OperatorKind.R, OperatorKind.RTILDE, OperatorKind.MULTI_WEIGHTED_HARDY, OperatorKind.MULTI_CESARO):
        raise UnsupportedArity(f"{kind.value} does not factor for m != 2")
    total = 1.0
    for i, phi in enumerate(factors):
        if op in (OperatorKind.R, OperatorKind.RTILDE):
            K = _radial_over_t(phi, sphere_area(dims[i]))
        elif op is OperatorKind.MULTI_WEIGHTED_HARDY:
            K = reduced_kernel_linear(OperatorKind.WEIGHTED_HARDY, phi, dims[i])
        else:
            K = reduced_kernel_linear(OperatorKind.CESARO, phi, dims[i])
        total *= _kernel_integral_1d(K, sig[i], cfg)
    return total
