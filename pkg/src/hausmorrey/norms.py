"""Local and complementary Morrey-type norms with mixed radial-angular integrability.

For f(x) = g(|x|) h(x/|x|) the angular integral is the stored closed form
a = ||h||_{L^p(S^{n-1})}, so with A(rho) = a |g(rho)| the norm reduces to
one-dimensional integrals in u = log rho:

    F(u) = A(e^u)^p~ e^{(n+alpha) u}
    I(v) = int_{-inf}^{v} F      (local)      or   int_{v}^{inf} F   (complementary)
    norm = ( int e^{-q lambda v} I(v)^{q/p~} dv )^{1/q}

I is built once, panel by panel, as a piecewise Legendre series and then
reused by the outer integral.  Inner panels are accepted when their error is
small relative to the running value of I, not to its total, because the
outer weight e^{-q lambda v} can magnify the region where I is still small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, InfiniteNorm, NonConvergence
from .functions.angular import SeparableFunction, as_separable, sphere_area
from .functions.profiles import PowerCutoff, RadialProfile, Scaled, ZeroProfile
from .functions.special import beta_fn
from .params import INF, Family, SpaceParams, recip, validate_params
from .quadrature import (
    DEFAULT_CFG,
    cumulative_integral,
    EndHint,
    Integrand1D,
    QuadConfig,
    gk_panels,
    integrate_batch,
    integrate_log_batch,
    sup_on_log_grid,
)

P_INF_NOTE = "p = inf: the angular supremum is integrated with the radial exponent p~"
COMPLEMENTARY_LABEL_NOTE = (
    "complementary space with an infinite exponent: integrals over (r, inf) and suprema over rho > r"
)

_SLOPE_STEP = 0.5


@dataclass(frozen=True)
class NormResult:
    value: float
    regime: str
    error_estimate: float
    oracle_value: Optional[float] = None
    deviations: Tuple[str, ...] = ()

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "regime": self.regime,
            "error_estimate": self.error_estimate,
            "oracle_value": self.oracle_value,
            "deviations": list(self.deviations),
        }


# ----------------------------------------------------------------------------
# closed forms


def closed_form_power_norm(beta: float, params) -> float:
    """Exact norm of rho**beta chi_{rho > 1} on a local space.

    With c = beta p~ + n + alpha, finite q:
        ||f||^q = omega_n^{q/p} c^{-(q/p~ + 1)} B(q/p~ + 1, q lambda / c - q/p~)
    and for q = inf the supremum sits at r^c = lambda / (lambda - beta - (n+alpha)/p~).
    """
    s = validate_params(params).space
    if s.family is not Family.LOCAL:
        raise DomainError("closed form is for local spaces")
    if s.p_tilde is INF:
        raise DomainError("closed form needs finite p~")
    n, pt, lam, al = s.n, s.p_tilde, s.lam, s.alpha
    omega = sphere_area(n)
    ang = omega ** recip(s.p)
    c = beta * pt + n + al
    if not c > 0:
        raise DomainError(f"beta p~ + n + alpha = {c} must be positive")
    if s.q is INF:
        gap = lam - beta - (n + al) / pt
        if not (gap > 0 and lam > 0):
            raise DomainError("need lambda > beta + (n + alpha)/p~ for a finite supremum")
        return (
            ang
            * c ** (-1.0 / pt)
            * ((beta + (n + al) / pt) / gap) ** (1.0 / pt)
            * (gap / lam) ** (lam / c)
        )
    q = s.q
    b_arg = q * lam / c - q / pt
    if not b_arg > 0:
        raise DomainError(f"Beta argument q lambda / c - q/p~ = {b_arg} must be positive")
    val_q = ang ** q * c ** (-(q / pt + 1.0)) * beta_fn(q / pt + 1.0, b_arg)
    return val_q ** (1.0 / q)


def _oracle_for(f: SeparableFunction, s: SpaceParams) -> Optional[float]:
    g, coef = f.radial, 1.0
    while isinstance(g, Scaled):
        coef *= g.c
        g = g.inner
    if not (isinstance(g, PowerCutoff) and g.side == "outer"):
        return None
    try:
        base = closed_form_power_norm(g.beta, s)
    except DomainError:
        return None
    ang_ratio = f.angular.lp_norm(s.p) / sphere_area(s.n) ** recip(s.p)
    return abs(coef * g.coef) * ang_ratio * base


# ----------------------------------------------------------------------------
# the norm


def _log_amplitude(f: SeparableFunction, ang: float):
    """u -> log A(e^u), with -inf where f vanishes."""
    log_ang = math.log(ang)

    def logA(u):
        u = np.asarray(u, dtype=float)
        g = np.abs(np.asarray(f.radial(np.exp(u)), dtype=float))
        with np.errstate(divide="ignore"):
            return log_ang + np.log(g)

    return logA


def _measured_rate(logF, u_edge, direction, hint_rate):
    """Slope of log F at a window edge; falls back to the hint if unusable."""
    l1 = float(logF(np.array([u_edge]))[0])
    l2 = float(logF(np.array([u_edge - direction * _SLOPE_STEP]))[0])
    if not (math.isfinite(l1) and math.isfinite(l2)):
        return hint_rate, l1
    rate = (l1 - l2) / (direction * _SLOPE_STEP)
    # keep the sign the hint prescribes; sub-leading terms must not flip it
    if math.isfinite(hint_rate) and (rate > 0) != (hint_rate > 0) and hint_rate != 0:
        rate = hint_rate
    return rate, l1


def _is_zero(f: SeparableFunction, ang: float) -> bool:
    g = f.radial
    if isinstance(g, ZeroProfile) or ang == 0:
        return True
    if isinstance(g, Scaled) and g.c == 0:
        return True
    lo, hi = g.support
    return not lo < hi


def _window(cfg: QuadConfig, g: RadialProfile):
    U0, U1 = cfg.u_window
    bps = [math.log(b) for b in g.breakpoints if b > 0 and math.isfinite(b)]
    if bps:
        U0 = min(U0, min(bps) - 5.0)
        U1 = max(U1, max(bps) + 5.0)
    lo, hi = g.support
    a, b = U0, U1
    trim_lo = trim_hi = False
    if lo > 0 and math.log(lo) > U0:
        a, trim_lo = math.log(lo), True
    if math.isfinite(hi) and math.log(hi) < U1:
        b, trim_hi = math.log(hi), True
    return U0, U1, a, b, trim_lo, trim_hi, bps


def space_norm(f, params, cfg: QuadConfig = DEFAULT_CFG) -> NormResult:
    """Norm of a radial or separable function in the given space."""
    vp = validate_params(params)
    s = vp.space
    sep = as_separable(f, s.n)
    ang = sep.angular.lp_norm(s.p)
    deviations = []
    if s.p is INF and s.p_tilde is not INF:
        deviations.append(P_INF_NOTE)
    if s.family is Family.COMPLEMENTARY and (s.p is INF or s.p_tilde is INF):
        deviations.append(COMPLEMENTARY_LABEL_NOTE)
    if s.p_tilde is INF:
        regime = "p̃=∞"
    elif s.q is INF:
        regime = "q=∞"
    elif s.p is INF:
        regime = "p=∞"
    else:
        regime = "finite-finite-finite"
    if _is_zero(sep, ang):
        return NormResult(0.0, regime, 0.0, 0.0 if regime != "p̃=∞" else None, tuple(deviations))
    if s.p_tilde is INF:
        value, err = _norm_sup_radial(sep, s, ang, cfg)
        return NormResult(value, regime, err, None, tuple(deviations))
    value, err = _norm_finite_radial(sep, s, ang, cfg)
    oracle = _oracle_for(sep, s) if s.family is Family.LOCAL else None
    return NormResult(value, regime, err, oracle, tuple(deviations))


def _norm_finite_radial(sep: SeparableFunction, s: SpaceParams, ang: float, cfg: QuadConfig):
    g = sep.radial
    pt, lam, na = s.p_tilde, s.lam, s.n + s.alpha
    local = s.family is Family.LOCAL
    logA = _log_amplitude(sep, ang)

    def logF(u):
        return pt * logA(u) + na * u

    def F(u):
        with np.errstate(over="ignore"):
            return np.exp(logF(u))

    # screening from the hints
    c0_h = pt * g.hint0.at_zero() + na
    c1_h = pt * g.hint_inf.at_inf() + na
    q = s.q
    if local:
        if not c0_h > 0:
            raise InfiniteNorm(f"inner integral diverges at 0 (rate {c0_h:g})")
        if math.isfinite(c0_h) and not c0_h / pt - lam > 0:
            raise InfiniteNorm("outer integral diverges at r -> 0")
        if max(c1_h, 0.0) / pt - lam >= 0 and not (q is INF and max(c1_h, 0.0) / pt - lam == 0):
            raise InfiniteNorm("outer integral diverges at r -> inf")
    else:
        if not c1_h < 0:
            raise InfiniteNorm(f"inner integral diverges at infinity (rate {c1_h:g})")
        if math.isfinite(c1_h) and not c1_h / pt - lam < 0:
            raise InfiniteNorm("outer integral diverges at r -> inf")
        if min(c0_h, 0.0) / pt - lam <= 0 and not (q is INF and min(c0_h, 0.0) / pt - lam == 0):
            raise InfiniteNorm("outer integral diverges at r -> 0")

    U0, U1, a, b, trim_lo, trim_hi, bps = _window(cfg, g)
    inner_tol = 0.1 * cfg.rel_tol

    if local:
        if trim_lo:
            start, c0, F0 = 0.0, math.inf, 0.0
        else:
            c0, l0 = _measured_rate(logF, a, -1.0, c0_h)
            F0 = math.exp(l0) if math.isfinite(l0) else 0.0
            start = F0 / c0 if F0 > 0 else 0.0
        cum, inner_err = cumulative_integral(F, a, b, bps, start, True, inner_tol, cfg.max_subdivisions)
        if trim_hi:
            c1, F1 = -math.inf, 0.0
        else:
            c1, l1 = _measured_rate(logF, b, 1.0, c1_h)
            F1 = math.exp(l1) if math.isfinite(l1) else 0.0
    else:
        if trim_hi:
            start, c1, F1 = 0.0, -math.inf, 0.0
        else:
            c1, l1 = _measured_rate(logF, b, 1.0, c1_h)
            F1 = math.exp(l1) if math.isfinite(l1) else 0.0
            start = F1 / (-c1) if F1 > 0 else 0.0
        cum, inner_err = cumulative_integral(F, a, b, bps, start, False, inner_tol, cfg.max_subdivisions)
        if trim_lo:
            c0, F0 = math.inf, 0.0
        else:
            c0, l0 = _measured_rate(logF, a, -1.0, c0_h)
            F0 = math.exp(l0) if math.isfinite(l0) else 0.0

    inner_rel = inner_err / max(cum.total, 1e-300)

    if q is INF:
        return _outer_sup(cum, s, a, b, c0, c1, F0, F1, local, cfg, inner_rel)

    expo = q / pt

    def G(v):
        I = cum(v)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(I > 0, np.exp(-q * lam * v + expo * np.log(np.where(I > 0, I, 1.0))), 0.0)

    # outer window: where I can be nonzero and not yet in closed-form tails
    oa, ob = (a, U1) if local else (U0, b)
    ob = max(ob, oa + 1.0)
    obps = np.array([[u for u in bps if oa < u < ob]]) if bps else None
    res = integrate_batch(
        lambda j, x: G(x), [oa], [ob], obps,
        rel_tol=cfg.rel_tol, abs_tol=0.0, init_width=2.0, max_panels=cfg.max_subdivisions,
    )
    if not res.converged[0]:
        raise NonConvergence("outer integral did not converge")
    total = float(res.values[0])
    outer_err = float(res.errors[0])

    if local:
        # below a: I = F0 e^{c0 (v - a)} / c0, a pure exponential
        if not trim_lo and F0 > 0:
            rate = expo * c0 - q * lam
            total += float(G(np.array([a]))[0]) / rate
        total += _tail_numeric(cum.total, F1, c1, ob, q, lam, expo, +1)
    else:
        if not trim_hi and F1 > 0:
            rate = expo * c1 - q * lam
            total += float(G(np.array([b]))[0]) / (-rate)
        total += _tail_numeric(cum.total, F0, c0, oa, q, lam, expo, -1)

    value = total ** (1.0 / q)
    rel = outer_err / max(total, 1e-300) / q + inner_rel / pt
    return value, value * rel


def _tail_numeric(I_edge, F_edge, c, edge, q, lam, expo, direction):
    """Outer tail beyond the window, with F continued as F_edge e^{c (v - edge)}.

    direction +1: v > edge, I(v) = I_edge + F_edge (e^{c w} - 1)/c   (local)
    direction -1: v < edge, I(v) = I_edge + F_edge (1 - e^{-c w})/c  (complementary)
    with w = |v - edge|.
    """
    if I_edge <= 0 and F_edge <= 0:
        return 0.0
    # growth rate of I along w, and the decay rate of the integrand
    grow = direction * c if F_edge > 0 and math.isfinite(c) else -math.inf
    weight = -q * lam * direction
    decay = -(weight + expo * max(grow, 0.0))
    if not decay > 0:
        raise InfiniteNorm("outer tail does not decay")

    def log_I(w):
        if F_edge > 0 and math.isfinite(c) and grow > 0:
            # I = (I_edge - F/g) + (F/g) e^{g w}, kept in log form against overflow
            rest = (I_edge - F_edge / grow) * np.exp(-grow * w) + F_edge / grow
            return grow * w + np.log(np.maximum(rest, 1e-300))
        if F_edge > 0 and math.isfinite(c) and c != 0:
            I = I_edge + F_edge * np.expm1(grow * w) / grow
        elif F_edge > 0 and c == 0:
            I = I_edge + F_edge * w
        else:
            I = np.full_like(w, I_edge)
        with np.errstate(divide="ignore"):
            return np.where(I > 0, np.log(np.where(I > 0, I, 1.0)), -np.inf)

    def integrand(j, w):
        with np.errstate(over="ignore"):
            return np.exp(weight * (w + direction * edge) + expo * log_I(w))

    W = min(max(40.0 / decay, 10.0), 1e5)
    res = integrate_log_batch(integrand, 0.0, W, math.inf, -decay, None, rel_tol=1e-12, init_width=W / 8)
    return float(res.values[0])


def _outer_sup(cum, s, a, b, c0, c1, F0, F1, local, cfg, inner_rel):
    pt, lam = s.p_tilde, s.lam

    def S(r):
        v = np.log(np.asarray(r, dtype=float))
        I = cum(v)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(I > 0, np.exp(-lam * v + np.log(np.where(I > 0, I, 1.0)) / pt), 0.0)

    U0, U1 = cfg.u_window
    lo, hi = (a, max(U1, b)) if local else (min(U0, a), b)
    g = Integrand1D(S, EndHint.zero(), EndHint.zero())
    best = sup_on_log_grid(g, cfg, math.exp(lo), math.exp(hi)).value
    # limits beyond the window when the supremand flattens out there
    if local and lam == 0 and not (F1 > 0 and c1 > 0):
        tail = cum.total + (F1 / (-c1) if F1 > 0 and c1 < 0 else 0.0)
        best = max(best, tail ** (1.0 / pt))
    if not local and lam == 0 and not (F0 > 0 and c0 < 0):
        tail = cum.total + (F0 / c0 if F0 > 0 and c0 > 0 else 0.0)
        best = max(best, tail ** (1.0 / pt))
    return best, best * (inner_rel / pt + 1e-12)


# ----------------------------------------------------------------------------
# p~ = inf: running essential supremum


def _norm_sup_radial(sep: SeparableFunction, s: SpaceParams, ang: float, cfg: QuadConfig):
    g = sep.radial
    lam = s.lam
    w = s.alpha * recip(s.p)
    local = s.family is Family.LOCAL
    logA = _log_amplitude(sep, ang)

    def logB(u):
        return logA(u) + w * u

    b0 = g.hint0.at_zero() + w
    b1 = g.hint_inf.at_inf() + w
    q = s.q
    if local:
        if b0 < 0:
            raise InfiniteNorm("the running supremum is infinite near 0")
        if q is not INF and math.isfinite(b0) and not b0 > lam:
            raise InfiniteNorm("outer integral diverges at r -> 0")
        if max(b1, 0.0) > lam or (q is not INF and max(b1, 0.0) >= lam):
            raise InfiniteNorm("outer integral diverges at r -> inf")
    else:
        if b1 > 0:
            raise InfiniteNorm("the running supremum is infinite near infinity")
        if q is not INF and math.isfinite(b1) and not b1 < lam:
            raise InfiniteNorm("outer integral diverges at r -> inf")
        if min(b0, 0.0) < lam or (q is not INF and min(b0, 0.0) <= lam):
            raise InfiniteNorm("outer integral diverges at r -> 0")

    U0, U1, a, b, trim_lo, trim_hi, bps = _window(cfg, g)

    # the weighted supremum sup_v e^{-lam v} J(v) equals sup_u e^{-lam u} B(u)
    if q is INF:
        def S(r):
            u = np.log(np.asarray(r, dtype=float))
            with np.errstate(over="ignore"):
                return np.exp(logB(u) - lam * u)

        hint0 = EndHint.zero() if trim_lo else EndHint.power(b0 - lam)
        hint1 = EndHint.zero() if trim_hi else EndHint.power(b1 - lam)
        res = sup_on_log_grid(Integrand1D(S, hint0, hint1), cfg, math.exp(a), math.exp(b))
        return res.value, res.value * 1e-12

    # running maximum of B on a fine grid, refined at interior local maxima
    npts = int(math.ceil((b - a) / math.log(10.0) * cfg.points_per_decade)) + 1
    grid = np.unique(np.concatenate([np.linspace(a, b, npts), [u for u in bps if a <= u <= b]]))
    eps_in = 1e-12 * max(1.0, abs(a), abs(b))
    probe = np.clip(grid, a + eps_in, b - eps_in)
    vals = np.exp(logB(probe))
    peaks = [k for k in range(1, grid.size - 1) if vals[k] >= vals[k - 1] and vals[k] >= vals[k + 1] and vals[k] > 0]
    extra_u, extra_v = [], []
    from .quadrature import _golden_max

    for k in peaks[:200]:
        fv, uv = _golden_max(lambda x: float(np.exp(logB(np.array([x])))[0]), probe[k - 1], probe[k + 1])
        extra_u.append(uv)
        extra_v.append(fv)
    if extra_u:
        grid = np.concatenate([probe, extra_u])
        vals = np.concatenate([vals, extra_v])
        order = np.argsort(grid)
        grid, vals = grid[order], vals[order]
    else:
        grid = probe
    run = np.maximum.accumulate(vals) if local else np.maximum.accumulate(vals[::-1])[::-1]

    def J(v):
        v = np.asarray(v, dtype=float)
        flat = v.reshape(-1)
        if local:
            k = np.clip(np.searchsorted(grid, flat, side="right") - 1, 0, grid.size - 1)
        else:
            k = np.clip(np.searchsorted(grid, flat, side="left"), 0, grid.size - 1)
        here = np.exp(logB(np.clip(flat, a + eps_in, b - eps_in)))
        return np.maximum(run[k], here).reshape(v.shape)

    def G(v):
        Jv = J(v)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(Jv > 0, np.exp(-q * lam * v + q * np.log(np.where(Jv > 0, Jv, 1.0))), 0.0)

    oa, ob = (a, U1) if local else (U0, b)
    obps = np.array([[u for u in bps if oa < u < ob]]) if bps else None
    res = integrate_batch(
        lambda j, x: G(x), [oa], [ob], obps,
        rel_tol=cfg.rel_tol, init_width=2.0, max_panels=cfg.max_subdivisions,
    )
    if not res.converged[0]:
        raise NonConvergence("outer integral did not converge")
    total = float(res.values[0])
    if local:
        if not trim_lo:
            total += float(G(np.array([a]))[0]) / (q * (b0 - lam))
        slope = _slope(logB, b, 1.0)
        grow = max(slope, 0.0) if not trim_hi else 0.0
        total += float(G(np.array([ob]))[0]) / (q * (lam - grow))
    else:
        if not trim_hi:
            total += float(G(np.array([b]))[0]) / (q * (lam - b1))
        slope = _slope(logB, a, -1.0)
        grow = min(slope, 0.0) if not trim_lo else 0.0
        total += float(G(np.array([oa]))[0]) / (q * (grow - lam))
    value = total ** (1.0 / q)
    return value, value * float(res.errors[0]) / max(total, 1e-300) / q


def _slope(logB, u, direction):
    l1 = float(logB(np.array([u]))[0])
    l2 = float(logB(np.array([u - direction * _SLOPE_STEP]))[0])
    if not (math.isfinite(l1) and math.isfinite(l2)):
        return 0.0
    return (l1 - l2) / (direction * _SLOPE_STEP)
