"""Adaptive quadrature and log-grid suprema.

Everything is built on one vectorised routine, :func:`integrate_batch`, which
runs Gauss-Kronrod 7/15 with bisection on many independent integrals at once.
Each integral ("item") keeps its own list of panels, so items whose integrands
jump at different places (a cutoff profile seen through a kernel at different
radii) are refined independently, while the numpy work per round is shared.

Semi-infinite integrals over (0, inf) are computed in u = log t on a finite
window.  Outside the window the integrand is replaced by its power-law
asymptote, whose exponent comes from the endpoint hints, and the tail is
added in closed form.  Divergence is decided from the hints before any
quadrature happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import DivergentIntegral, NonConvergence, ParamError, SupAtBoundary

# Gauss-Kronrod 15-point abscissae and weights on [-1, 1] (QUADPACK qk15).
_XGK_HALF = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK_HALF = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG_HALF = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

XK = np.concatenate([-_XGK_HALF[:-1], _XGK_HALF[::-1]])
WK = np.concatenate([_WGK_HALF[:-1], _WGK_HALF[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes (1, 3, 5 from each end, and 0)
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
WG = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    t_min: float = math.exp(-30.0)
    t_max: float = math.exp(30.0)
    r_min: float = 1e-6
    r_max: float = 1e6
    points_per_decade: int = 64

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ParamError("rel_tol must be positive")
        if not self.abs_tol >= 0:
            raise ParamError("abs_tol must be nonnegative")
        if not 0 < self.t_min < self.t_max:
            raise ParamError("truncation needs 0 < t_min < t_max")
        if not 0 < self.r_min < self.r_max:
            raise ParamError("grid needs 0 < r_min < r_max")
        if self.points_per_decade < 8:
            raise ParamError("points_per_decade must be at least 8")
        if self.max_subdivisions < 1:
            raise ParamError("max_subdivisions must be positive")

    @property
    def u_window(self) -> Tuple[float, float]:
        return math.log(self.t_min), math.log(self.t_max)

    def with_(self, **kw) -> "QuadConfig":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_subdivisions": self.max_subdivisions,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "points_per_decade": self.points_per_decade,
        }


DEFAULT_CFG = QuadConfig()


@dataclass(frozen=True)
class EndHint:
    """Asymptotic behaviour of a function at 0 or at infinity.

    kind "power": behaves like t**exponent.  kind "zero": vanishes identically
    near that end.  kind "fast": decays faster than every power there (an
    exponential at infinity, say).
    """

    kind: str = "power"
    exponent: float = 0.0

    def __post_init__(self):
        if self.kind not in ("power", "zero", "fast"):
            raise ParamError(f"unknown hint kind {self.kind!r}")

    @staticmethod
    def power(a: float) -> "EndHint":
        return EndHint("power", float(a))

    @staticmethod
    def zero() -> "EndHint":
        return EndHint("zero", 0.0)

    @staticmethod
    def fast() -> "EndHint":
        return EndHint("fast", 0.0)

    @property
    def vanishes(self) -> bool:
        return self.kind != "power"

    def at_zero(self) -> float:
        """Effective power exponent when this hint describes t -> 0."""
        return math.inf if self.vanishes else self.exponent

    def at_inf(self) -> float:
        """Effective power exponent when this hint describes t -> inf."""
        return -math.inf if self.vanishes else self.exponent

    def shifted(self, da: float) -> "EndHint":
        return self if self.vanishes else EndHint.power(self.exponent + da)

    def scaled(self, k: float) -> "EndHint":
        """Hint of |f|**k for k > 0."""
        return self if self.vanishes else EndHint.power(self.exponent * k)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "exponent": self.exponent}


def hint_product(a: EndHint, b: EndHint) -> EndHint:
    if a.kind == "zero" or b.kind == "zero":
        return EndHint.zero()
    if a.kind == "fast" or b.kind == "fast":
        return EndHint.fast()
    return EndHint.power(a.exponent + b.exponent)


@dataclass(frozen=True)
class Integrand1D:
    """A real function on (0, inf) with its endpoint behaviour.

    ``func`` must accept and return numpy arrays.  ``breakpoints`` lists the
    points where it is not smooth; the adaptive rule never straddles them.
    """

    func: Callable
    hint0: EndHint = field(default_factory=EndHint.zero)
    hint_inf: EndHint = field(default_factory=EndHint.zero)
    breakpoints: Tuple[float, ...] = ()

    def __call__(self, t):
        return self.func(np.asarray(t, dtype=float))

    def __add__(self, other: "Integrand1D") -> "Integrand1D":
        return linear_combination([(1.0, self), (1.0, other)])


def linear_combination(terms: Sequence[Tuple[float, Integrand1D]]) -> Integrand1D:
    terms = [(float(c), f) for c, f in terms]

    def func(t):
        return sum(c * f.func(t) for c, f in terms)

    def worst(hints, at_zero):
        live = [h for h in hints]
        if at_zero:
            return min(live, key=lambda h: h.at_zero())
        return max(live, key=lambda h: h.at_inf())

    bps = sorted({b for _, f in terms for b in f.breakpoints})
    return Integrand1D(
        func,
        worst([f.hint0 for _, f in terms], True),
        worst([f.hint_inf for _, f in terms], False),
        tuple(bps),
    )


@dataclass(frozen=True)
class Integrand2D:
    """A real function on (0, inf)^2.

    Hints are per axis (the behaviour in t_i with the other variable fixed).
    When ``factors`` holds two Integrand1D objects the function is their
    product, which enables the separable fast path.
    """

    func: Callable
    hints0: Tuple[EndHint, EndHint] = (EndHint.zero(), EndHint.zero())
    hints_inf: Tuple[EndHint, EndHint] = (EndHint.zero(), EndHint.zero())
    breakpoints: Tuple[Tuple[float, ...], Tuple[float, ...]] = ((), ())
    factors: Optional[Tuple[Integrand1D, Integrand1D]] = None
    # optional: extra breakpoints in t1 that depend on t2 (vectorised in t2)
    inner_breaks: Optional[Callable] = None

    @staticmethod
    def separable(f1: Integrand1D, f2: Integrand1D) -> "Integrand2D":
        return Integrand2D(
            lambda t1, t2: f1.func(t1) * f2.func(t2),
            (f1.hint0, f2.hint0),
            (f1.hint_inf, f2.hint_inf),
            (tuple(f1.breakpoints), tuple(f2.breakpoints)),
            (f1, f2),
        )


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float

    def __iter__(self):
        return iter((self.value, self.error))

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class SupResult:
    value: float
    argmax: float

    def __iter__(self):
        return iter((self.value, self.argmax))


# ----------------------------------------------------------------------------
# batched adaptive Gauss-Kronrod


def gk_panels(func, items, left, right):
    """Apply the 15-point rule on panels [left, right] of the given items.

    Returns (values, error estimates, node values).  The error estimate is
    QUADPACK's scaled |K15 - G7|.
    """
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    if half.size == 0:
        return np.zeros(0), np.zeros(0), np.zeros((0, XK.size))
    x = mid[:, None] + half[:, None] * XK[None, :]
    fx = np.asarray(func(items, x), dtype=float)
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    fx = np.where(np.isfinite(fx), fx, np.nan)
    k = fx @ WK
    g = fx[:, _GAUSS_IDX] @ WG
    mean = 0.5 * k
    resabs = np.abs(fx) @ WK
    resasc = np.abs(fx - mean[:, None]) @ WK
    err = np.abs(k - g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(resasc > 0, np.minimum(1.0, (200.0 * err / resasc) ** 1.5), 1.0)
    err = np.where((resasc > 0) & (err > 0), resasc * scale, err)
    err = np.maximum(err, 50.0 * _EPS * resabs)
    ah = np.abs(half)
    return k * half, err * ah, fx


@dataclass
class BatchResult:
    values: np.ndarray
    errors: np.ndarray
    converged: np.ndarray


def _initial_panels(a, b, breaks, init_width):
    M = a.shape[0]
    if breaks is None or np.size(breaks) == 0:
        breaks = np.empty((M, 0))
    breaks = np.asarray(breaks, dtype=float).reshape(M, -1)
    lo, hi = a[:, None], b[:, None]
    bk = np.where(np.isfinite(breaks), np.clip(breaks, lo, hi), lo)
    E = np.sort(np.concatenate([lo, bk, hi], axis=1), axis=1)
    left, right = E[:, :-1], E[:, 1:]
    scale = np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))
    keep = (right - left) > 8 * _EPS * scale
    items = np.broadcast_to(np.arange(M)[:, None], left.shape)[keep]
    L, R = left[keep], right[keep]
    if init_width is not None and init_width > 0 and L.size:
        k = np.maximum(1, np.ceil((R - L) / init_width).astype(int))
        if (k > 1).any():
            rep = np.repeat(np.arange(L.size), k)
            offs = np.arange(rep.size) - np.repeat(np.cumsum(k) - k, k)
            L0, R0 = L[rep], R[rep]
            w = (R0 - L0) / k[rep]
            items = items[rep]
            L = L0 + offs * w
            R = np.where(offs == k[rep] - 1, R0, L0 + (offs + 1) * w)
    return items, L, R


def integrate_batch(
    func,
    a,
    b,
    breaks=None,
    *,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    max_panels: int = 2000,
    init_width: Optional[float] = None,
    max_rounds: int = 60,
) -> BatchResult:
    """Integrate many functions at once.

    ``func(items, x)`` receives an int array of item indices of shape (P,)
    and nodes of shape (P, 15), and returns values of shape (P, 15).
    Item j is integrated over [a[j], b[j]] with optional breakpoints
    ``breaks[j]`` (NaN entries are ignored).
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    a, b = np.broadcast_arrays(a, b)
    a, b = a.copy(), b.copy()
    M = a.size
    if M == 0:
        return BatchResult(np.zeros(0), np.zeros(0), np.ones(0, dtype=bool))
    items, L, R = _initial_panels(a, b, breaks, init_width)
    val, err, _ = gk_panels(func, items, L, R)
    converged = np.zeros(M, dtype=bool)
    for _ in range(max_rounds):
        tot = np.bincount(items, val, minlength=M)
        etot = np.bincount(items, err, minlength=M)
        if np.isnan(tot).any():
            bad_items = np.unique(items[np.isnan(val)])
            raise NonConvergence(f"integrand not finite for items {bad_items[:5].tolist()}")
        tol = np.maximum(abs_tol, rel_tol * np.abs(tot))
        bad = etot > tol
        npan = np.bincount(items, minlength=M)
        bad &= npan < max_panels
        if not bad.any():
            break
        width = R - L
        scale = np.maximum(1.0, np.maximum(np.abs(L), np.abs(R)))
        splittable = width > 1e3 * _EPS * scale
        sel = bad[items] & (err > tol[items] / np.maximum(npan[items], 1)) & splittable
        if not sel.any():
            break
        mid = 0.5 * (L[sel] + R[sel])
        c_items = np.concatenate([items[sel], items[sel]])
        c_L = np.concatenate([L[sel], mid])
        c_R = np.concatenate([mid, R[sel]])
        c_val, c_err, _ = gk_panels(func, c_items, c_L, c_R)
        keep = ~sel
        items = np.concatenate([items[keep], c_items])
        L = np.concatenate([L[keep], c_L])
        R = np.concatenate([R[keep], c_R])
        val = np.concatenate([val[keep], c_val])
        err = np.concatenate([err[keep], c_err])
    # deterministic reduction: sum panels in order of (item, left edge)
    order = np.lexsort((L, items))
    items, val, err = items[order], val[order], err[order]
    tot = np.bincount(items, val, minlength=M)
    etot = np.bincount(items, err, minlength=M)
    tol = np.maximum(abs_tol, rel_tol * np.abs(tot))
    converged = etot <= tol * 1.000001
    return BatchResult(tot, etot, converged)


def _as_item_array(x, M):
    return np.broadcast_to(np.asarray(x, dtype=float), (M,)).copy()


def integrate_log_batch(
    h,
    U0,
    U1,
    rate0,
    rate1,
    breaks=None,
    *,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    init_width: float = 4.0,
    max_panels: int = 2000,
) -> BatchResult:
    """Integrate h(j, u) over the whole real line for every item j.

    Inside [U0[j], U1[j]] adaptive quadrature is used.  Below U0 the
    integrand is taken to be h(j, U0) exp(rate0 (u - U0)), above U1 likewise
    with rate1; rate0 = +inf or rate1 = -inf means nothing is added there.
    """
    U0 = np.atleast_1d(np.asarray(U0, dtype=float))
    U1 = np.atleast_1d(np.asarray(U1, dtype=float))
    M = max(U0.size, U1.size)
    U0, U1 = _as_item_array(U0, M), _as_item_array(U1, M)
    rate0, rate1 = _as_item_array(rate0, M), _as_item_array(rate1, M)
    if np.any(rate0 <= 0) or np.any(rate1 >= 0):
        raise DivergentIntegral("tail exponents make the integral diverge")
    res = integrate_batch(
        h, U0, U1, breaks, rel_tol=rel_tol, abs_tol=abs_tol, init_width=init_width, max_panels=max_panels
    )
    idx = np.arange(M)
    tails = np.zeros(M)
    lo = np.isfinite(rate0)
    if lo.any():
        h0 = np.asarray(h(idx[lo], U0[lo][:, None]), dtype=float).reshape(-1)
        tails[lo] += h0 / rate0[lo]
    hi = np.isfinite(rate1)
    if hi.any():
        h1 = np.asarray(h(idx[hi], U1[hi][:, None]), dtype=float).reshape(-1)
        tails[hi] += h1 / (-rate1[hi])
    tails = np.where(np.isfinite(tails), tails, np.nan)
    return BatchResult(res.values + tails, res.errors, res.converged)


def tail_rates(hint0: EndHint, hint_inf: EndHint) -> Tuple[float, float]:
    """Growth rates in u = log t of f(e^u) e^u from the hints of f."""
    return hint0.at_zero() + 1.0, hint_inf.at_inf() + 1.0


def log_window(cfg: QuadConfig, breakpoints: Sequence[float] = ()) -> Tuple[float, float]:
    """The u-window of cfg, widened so every breakpoint sits well inside."""
    U0, U1 = cfg.u_window
    bps = [math.log(b) for b in breakpoints if b > 0 and math.isfinite(b)]
    if bps:
        U0 = min(U0, min(bps) - 5.0)
        U1 = max(U1, max(bps) + 5.0)
    return U0, U1


def _log_breaks(bps, U0, U1):
    out = [math.log(b) for b in bps if b > 0 and math.isfinite(b)]
    return np.array([[u for u in out if U0 < u < U1]]) if out else None


def _check(res: BatchResult, what: str) -> None:
    if not np.all(res.converged):
        raise NonConvergence(f"{what}: error estimate {res.errors.max():.3g} above tolerance")


def integrate(f: Integrand1D, domain=None, cfg: QuadConfig = DEFAULT_CFG) -> QuadResult:
    """Integrate f over (0, inf) (domain None or "semi_infinite") or (a, b).

    A zero left endpoint or an infinite right endpoint is treated in the
    logarithmic variable with hint-driven tails.
    """
    if domain is None or domain == "semi_infinite":
        a, b = 0.0, math.inf
    else:
        a, b = (float(x) for x in domain)
        if not a < b:
            raise ParamError(f"empty interval ({a}, {b})")
        if a < 0:
            raise ParamError("integration domains live in [0, inf]")
    if a > 0 and math.isfinite(b):
        bps = [x for x in f.breakpoints if a < x < b]
        res = integrate_batch(
            lambda j, x: f.func(x),
            [a],
            [b],
            np.array([bps]) if bps else None,
            rel_tol=cfg.rel_tol,
            abs_tol=cfg.abs_tol,
            max_panels=cfg.max_subdivisions,
        )
        _check(res, "integrate")
        return QuadResult(float(res.values[0]), float(res.errors[0]))

    c0, c1 = tail_rates(f.hint0, f.hint_inf)
    U0, U1 = log_window(cfg, f.breakpoints)
    if a > 0:
        U0, c0 = math.log(a), math.inf
    elif not c0 > 0:
        raise DivergentIntegral(f"integrand ~ t^{f.hint0.exponent} is not integrable at 0")
    if math.isfinite(b):
        U1, c1 = math.log(b), -math.inf
        if U1 <= U0:
            U0 = U1 - 60.0
    elif not c1 < 0:
        raise DivergentIntegral(f"integrand ~ t^{f.hint_inf.exponent} is not integrable at infinity")

    def h(j, u):
        t = np.exp(u)
        return f.func(t) * t

    res = integrate_log_batch(
        h,
        U0,
        U1,
        c0,
        c1,
        _log_breaks(f.breakpoints, U0, U1),
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        max_panels=cfg.max_subdivisions,
    )
    _check(res, "integrate")
    return QuadResult(float(res.values[0]), float(res.errors[0]))


def integrate_log_batch_2d(
    h,
    M: int,
    win1,
    win2,
    rates1,
    rates2,
    breaks1=None,
    breaks2=None,
    inner_breaks=None,
    *,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    init_width: float = 4.0,
    max_panels: int = 2000,
) -> BatchResult:
    """Nested version of integrate_log_batch: int int h(j, u1, u2) du1 du2.

    The outer integral runs over u2, the inner over u1.  ``win*`` and
    ``rates*`` are pairs of per-item arrays.  ``breaks1`` is an (M, B)
    array of u1-breakpoints; ``inner_breaks(j, u2)`` may add breakpoints in
    u1 that move with u2 (returns an array of shape (K, B')).
    """
    A0, A1 = (_as_item_array(w, M) for w in win1)
    B0, B1 = (_as_item_array(w, M) for w in win2)
    a0, a1 = (_as_item_array(r, M) for r in rates1)
    b0, b1 = (_as_item_array(r, M) for r in rates2)
    if breaks1 is not None:
        breaks1 = np.atleast_2d(np.asarray(breaks1, dtype=float))
        breaks1 = np.broadcast_to(breaks1, (M, breaks1.shape[1]))

    def outer(jj, u2):
        shape = u2.shape
        Q = shape[1]
        j_flat = np.repeat(jj, Q)
        u2_flat = u2.reshape(-1)
        bk = None
        parts = []
        if breaks1 is not None:
            parts.append(breaks1[j_flat])
        if inner_breaks is not None:
            parts.append(np.asarray(inner_breaks(j_flat, u2_flat), dtype=float).reshape(j_flat.size, -1))
        if parts:
            bk = np.concatenate(parts, axis=1)

        def inner(k, u1):
            return h(j_flat[k][:, None], u1, u2_flat[k][:, None])

        res = integrate_log_batch(
            inner,
            A0[j_flat],
            A1[j_flat],
            a0[j_flat],
            a1[j_flat],
            bk,
            rel_tol=0.1 * rel_tol,
            abs_tol=abs_tol,
            init_width=init_width,
            max_panels=max_panels,
        )
        _check(res, "inner integral")
        return res.values.reshape(shape)

    return integrate_log_batch(
        outer,
        B0,
        B1,
        b0,
        b1,
        breaks2,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        init_width=init_width,
        max_panels=max_panels,
    )


def tensor_integrate_2d(f: Integrand2D, cfg: QuadConfig = DEFAULT_CFG, use_separable: bool = True) -> QuadResult:
    """Integrate f over (0, inf)^2.

    Separable integrands (``f.factors`` set) are integrated as a product of
    two 1-D integrals unless ``use_separable`` is False.
    """
    if use_separable and f.factors is not None:
        r1 = integrate(f.factors[0], None, cfg)
        r2 = integrate(f.factors[1], None, cfg)
        v = r1.value * r2.value
        return QuadResult(v, abs(r1.error * r2.value) + abs(r2.error * r1.value))

    rates = []
    for ax in (0, 1):
        c0, c1 = tail_rates(f.hints0[ax], f.hints_inf[ax])
        if not c0 > 0:
            raise DivergentIntegral(f"axis {ax + 1}: not integrable at 0")
        if not c1 < 0:
            raise DivergentIntegral(f"axis {ax + 1}: not integrable at infinity")
        rates.append((c0, c1))
    w1 = log_window(cfg, f.breakpoints[0])
    w2 = log_window(cfg, f.breakpoints[1])
    b1 = _log_breaks(f.breakpoints[0], *w1)
    b2 = _log_breaks(f.breakpoints[1], *w2)

    def h(j, u1, u2):
        t1, t2 = np.exp(u1), np.exp(u2)
        return f.func(t1, t2) * t1 * t2

    ib = None
    if f.inner_breaks is not None:
        def ib(j, u2):
            tb = np.asarray(f.inner_breaks(np.exp(u2)), dtype=float)
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(tb > 0, np.log(np.where(tb > 0, tb, 1.0)), np.nan)

    res = integrate_log_batch_2d(
        h, 1, w1, w2, rates[0], rates[1], b1, b2, ib,
        rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol, max_panels=cfg.max_subdivisions,
    )
    _check(res, "tensor_integrate_2d")
    return QuadResult(float(res.values[0]), float(res.errors[0]))


# ----------------------------------------------------------------------------
# cumulative integrals


# Legendre interpolation on the 15 Kronrod nodes and its antiderivative from -1
_VAND = np.polynomial.legendre.legvander(XK, 14)
_VINV = np.linalg.inv(_VAND)
_INT = np.zeros((16, 15))
for _k in range(15):
    _e = np.zeros(15)
    _e[_k] = 1.0
    _INT[:, _k] = np.polynomial.legendre.legint(_e, lbnd=-1.0)
_ANTI = _INT @ _VINV  # node values -> antiderivative coefficients (16)


class CumulativeIntegral:
    """Piecewise Legendre representation of int F from the left (or right)."""

    def __init__(self, L, R, fx, val, start, from_left):
        order = np.argsort(L)
        self.L, self.R = L[order], R[order]
        self.half = 0.5 * (self.R - self.L)
        self.mid = 0.5 * (self.R + self.L)
        self.val = val[order]
        self.coef = fx[order] @ _ANTI.T  # (P, 16)
        self.from_left = from_left
        if from_left:
            self.before = start + np.concatenate([[0.0], np.cumsum(self.val)[:-1]])
        else:
            suffix = np.cumsum(self.val[::-1])[::-1]
            self.before = start + np.concatenate([suffix[1:], [0.0]])
        self.total = start + float(np.sum(self.val))
        self.start = start

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        flat = v.reshape(-1)
        k = np.clip(np.searchsorted(self.L, flat, side="right") - 1, 0, self.L.size - 1)
        xi = np.clip((flat - self.mid[k]) / self.half[k], -1.0, 1.0)
        P = np.polynomial.legendre.legvander(xi, 15)
        part = self.half[k] * np.einsum("ij,ij->i", P, self.coef[k])
        if self.from_left:
            out = self.before[k] + part
            out = np.where(flat < self.L[0], self.start, out)
            out = np.where(flat > self.R[-1], self.total, out)
        else:
            out = self.before[k] + (self.val[k] - part)
            out = np.where(flat > self.R[-1], self.start, out)
            out = np.where(flat < self.L[0], self.total, out)
        return np.maximum(out, 0.0).reshape(v.shape)


def _interp_error(fx, width):
    # partial integrals use the interpolant, so its trailing Legendre
    # coefficients must be small too, not only the panel total
    c = fx @ _VINV.T
    return 0.5 * width * (np.abs(c[:, -1]) + np.abs(c[:, -2]))


def _initial_edges(a, b, breaks, width):
    bps = sorted(u for u in breaks if a < u < b)
    edges = [a] + bps + [b]
    L, R = [], []
    for x0, x1 in zip(edges[:-1], edges[1:]):
        if x1 - x0 <= 1e-12 * max(1.0, abs(x0)):
            continue
        k = max(1, int(math.ceil((x1 - x0) / width)))
        pts = np.linspace(x0, x1, k + 1)
        L.extend(pts[:-1])
        R.extend(pts[1:])
    return np.array(L), np.array(R)


def cumulative_integral(F, a, b, breaks, start, from_left, rel_tol, max_panels):
    """Adaptive GK15 build of v -> start + int_a^v F (or start + int_v^b F).

    A panel is accepted when its error is below rel_tol times the running
    value of the integral at that panel, so the result is accurate in a
    relative sense everywhere, including where it is still tiny.
    """
    L, R = _initial_edges(a, b, breaks, 2.0)

    def func(items, x):
        return F(x)

    items = np.zeros(L.size, dtype=int)
    val, err, fx = gk_panels(func, items, L, R)
    for _ in range(80):
        order = np.argsort(L)
        v_sorted = val[order]
        if from_left:
            run = start + np.concatenate([[0.0], np.cumsum(v_sorted)[:-1]])
        else:
            suffix = np.cumsum(v_sorted[::-1])[::-1]
            run = start + np.concatenate([suffix[1:], [0.0]])
        scale = np.empty_like(val)
        scale[order] = run + np.abs(v_sorted)
        if np.isnan(val).any():
            raise NonConvergence("integrand is not finite")
        bad = np.maximum(err, _interp_error(fx, R - L)) > rel_tol * scale + 1e-300
        width = R - L
        bad &= width > 1e-11 * np.maximum(1.0, np.abs(L))
        if not bad.any():
            break
        if L.size + bad.sum() > max_panels:
            raise NonConvergence("cumulative integral needs more than max_subdivisions panels")
        mid = 0.5 * (L[bad] + R[bad])
        cL = np.concatenate([L[bad], mid])
        cR = np.concatenate([mid, R[bad]])
        cv, ce, cf = gk_panels(func, np.zeros(cL.size, dtype=int), cL, cR)
        keep = ~bad
        L = np.concatenate([L[keep], cL])
        R = np.concatenate([R[keep], cR])
        val = np.concatenate([val[keep], cv])
        err = np.concatenate([err[keep], ce])
        fx = np.concatenate([fx[keep], cf])
    return CumulativeIntegral(L, R, fx, val, start, from_left), float(np.sum(err))


# ----------------------------------------------------------------------------
# suprema


def _golden_max(phi, lo, hi, iters=60):
    """Golden-section search for a maximum of phi on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = phi(c), phi(d)
    best = max((fc, c), (fd, d))
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = phi(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = phi(d)
        best = max(best, (fc, c), (fd, d))
        if b - a < 1e-13 * max(1.0, abs(a)):
            break
    return best


def sup_on_log_grid(
    g: Integrand1D,
    cfg: QuadConfig = DEFAULT_CFG,
    r_min: Optional[float] = None,
    r_max: Optional[float] = None,
) -> SupResult:
    """Supremum of g over r > 0 from a log-spaced grid plus local refinement.

    The grid spans [r_min, r_max] at cfg.points_per_decade.  The discrete
    maximiser is refined by two rounds of golden-section search in log r.
    If the maximiser sits at the edge of the window and the tail hint on
    that side says g keeps growing, SupAtBoundary is raised.
    """
    r_min = cfg.r_min if r_min is None else r_min
    r_max = cfg.r_max if r_max is None else r_max
    lo, hi = math.log10(r_min), math.log10(r_max)
    npts = int(math.ceil((hi - lo) * cfg.points_per_decade)) + 1
    u = np.linspace(lo, hi, npts) * math.log(10.0)
    vals = np.asarray(g.func(np.exp(u)), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise NonConvergence("supremand is not finite on the grid")
    k = int(np.argmax(vals))
    grows_left = g.hint0.kind == "power" and g.hint0.exponent < 0
    grows_right = g.hint_inf.kind == "power" and g.hint_inf.exponent > 0
    if (k <= 1 and grows_left) or (k >= npts - 2 and grows_right):
        raise SupAtBoundary(f"supremum sits at the window edge r = {math.exp(u[k]):.3g}")

    def phi(x):
        return float(g.func(np.array([math.exp(x)]))[0])

    best = (float(vals[k]), float(u[k]))
    a, b = u[max(k - 1, 0)], u[min(k + 1, npts - 1)]
    if b > a:
        first = _golden_max(phi, a, b)
        best = max(best, first)
        width = (b - a) * 1e-3
        second = _golden_max(phi, max(a, first[1] - width), min(b, first[1] + width))
        best = max(best, second)
    return SupResult(best[0], math.exp(best[1]))
