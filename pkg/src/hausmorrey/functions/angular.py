"""Angular factors h on the unit sphere and separable functions g(|x|) h(x/|x|).

Each factor stores closed forms for its sphere integrals, so norm
computations never integrate over the sphere.  ``sphere_lp_norm`` does the
sphere integral numerically and exists to cross-check those closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import DimensionError, ParamError
from ..params import INF, as_exponent
from .profiles import RadialProfile
from .special import beta_fn, gamma_fn


def sphere_area(n: int) -> float:
    """omega_n, the surface area of S^{n-1}."""
    return 2.0 * math.pi ** (n / 2.0) / gamma_fn(n / 2.0)


def ball_volume(n: int) -> float:
    """nu_n, the volume of the unit ball in R^n."""
    return sphere_area(n) / n


class AngularFactor:
    n: int

    def __call__(self, xi):
        """Evaluate at unit vectors xi of shape (..., n)."""
        raise NotImplementedError

    def lp_integral(self, p: float) -> float:
        """int_{S^{n-1}} |h|^p dsigma."""
        raise NotImplementedError

    def ess_sup(self) -> float:
        raise NotImplementedError

    def integral(self) -> float:
        """int_{S^{n-1}} h dsigma."""
        raise NotImplementedError

    def lp_norm(self, p) -> float:
        p = as_exponent(p)
        if p is INF:
            return self.ess_sup()
        return self.lp_integral(p) ** (1.0 / p)

    def mean(self) -> float:
        return self.integral() / sphere_area(self.n)

    @property
    def is_constant(self) -> bool:
        return False


def _check_low_dim(n):
    if n not in (2, 3):
        raise DimensionError(f"non-constant angular factors are available for n = 2, 3 only, got {n}")


@dataclass(frozen=True)
class ConstantAngular(AngularFactor):
    n: int
    c: float = 1.0

    def __call__(self, xi):
        return np.full(np.shape(xi)[:-1], self.c, dtype=float)

    def lp_integral(self, p):
        return abs(self.c) ** p * sphere_area(self.n)

    def ess_sup(self):
        return abs(self.c)

    def integral(self):
        return self.c * sphere_area(self.n)

    @property
    def is_constant(self):
        return True

    def to_dict(self):
        return {"variant": "constant", "c": self.c}


@dataclass(frozen=True)
class CosPower(AngularFactor):
    """|xi_1|^k; on the circle this is |cos theta|^k."""

    n: int
    k: float

    def __post_init__(self):
        _check_low_dim(self.n)
        if not self.k >= 0:
            raise ParamError("cos power must be nonnegative")

    def __call__(self, xi):
        return np.abs(np.asarray(xi)[..., 0]) ** self.k

    def _moment(self, s):
        # int_{S^{n-1}} |xi_1|^s dsigma
        if self.n == 2:
            return 2.0 * beta_fn((s + 1.0) / 2.0, 0.5)
        return 4.0 * math.pi / (s + 1.0)

    def lp_integral(self, p):
        return self._moment(self.k * p)

    def ess_sup(self):
        return 1.0

    def integral(self):
        return self._moment(self.k)

    def to_dict(self):
        return {"variant": "cos_power", "k": self.k}


@dataclass(frozen=True)
class OnePlusCos(AngularFactor):
    """1 + a xi_1 with |a| <= 1; nonnegative on the sphere.

    On S^2 the L^p integral is elementary.  On the circle it is
    2 pi 2F1(-p/2, (1-p)/2; 1; a^2), summed directly; this needs |a| <= 0.95
    for fast convergence, and |a| = 1 has its own Beta closed form.
    """

    n: int
    a: float

    def __post_init__(self):
        _check_low_dim(self.n)
        if not abs(self.a) <= 1:
            raise ParamError("need |a| <= 1 for a nonnegative factor")
        if self.n == 2 and 0.95 < abs(self.a) < 1:
            raise ParamError("on the circle use |a| <= 0.95 or |a| = 1")

    def __call__(self, xi):
        return 1.0 + self.a * np.asarray(xi)[..., 0]

    def lp_integral(self, p):
        a = self.a
        if a == 0:
            return sphere_area(self.n)
        if self.n == 3:
            # ((1+a)^{p+1} - (1-a)^{p+1}) / (a (p+1)) without cancellation for small a
            if abs(a) == 1:
                return 2.0 * math.pi * 2.0 ** (p + 1) / (p + 1)
            hi, lo = (p + 1) * math.log1p(a), (p + 1) * math.log1p(-a)
            return 2.0 * math.pi * math.exp(lo) * math.expm1(hi - lo) / (a * (p + 1))
        if abs(a) == 1:
            return 2.0 ** (p + 1) * beta_fn(p + 0.5, 0.5)
        z = a * a
        term, total, k = 1.0, 1.0, 0
        while True:
            term *= (k - p / 2.0) * (k + (1.0 - p) / 2.0) / ((k + 1.0) ** 2) * z
            total += term
            k += 1
            if abs(term) < 1e-17 * abs(total) or k > 100000:
                break
        return 2.0 * math.pi * total

    def ess_sup(self):
        return 1.0 + abs(self.a)

    def integral(self):
        return sphere_area(self.n)

    def to_dict(self):
        return {"variant": "one_plus_cos", "a": self.a}


class ProductAngular(AngularFactor):
    """h1 * h2; its sphere integrals are computed numerically."""

    def __init__(self, h1: AngularFactor, h2: AngularFactor):
        if h1.n != h2.n:
            raise DimensionError("angular factors live on different spheres")
        self.n, self.h1, self.h2 = h1.n, h1, h2

    def __call__(self, xi):
        return self.h1(xi) * self.h2(xi)

    def lp_integral(self, p):
        return sphere_lp_norm(self, p, points=16384) ** p

    def ess_sup(self):
        return sphere_lp_norm(self, INF, points=16384)

    def integral(self):
        if self.h1.is_constant:
            return self.h1.c * self.h2.integral()
        if self.h2.is_constant:
            return self.h2.c * self.h1.integral()
        return _signed_sphere_integral(self)

    def to_dict(self):
        return {"variant": "product", "factors": [self.h1.to_dict(), self.h2.to_dict()]}


@lru_cache(maxsize=16)
def _gauss_legendre(m: int):
    return np.polynomial.legendre.leggauss(m)


def _signed_sphere_integral(h: AngularFactor, points: int = 16384) -> float:
    if h.n == 2:
        th = 2.0 * math.pi * np.arange(points) / points
        xi = np.stack([np.cos(th), np.sin(th)], axis=-1)
        return float(2.0 * math.pi / points * np.sum(h(xi)))
    _check_low_dim(h.n)
    m = 256
    xg, wg = _gauss_legendre(m)
    xi = np.stack([xg, np.sqrt(1.0 - xg * xg), np.zeros_like(xg)], axis=-1)
    # factors here depend on xi_1 only
    return float(2.0 * math.pi * np.sum(wg * h(xi)))


def sphere_lp_norm(h: AngularFactor, p, points: int = 4096) -> float:
    """Numerical L^p(S^{n-1}) norm of h.

    Circle: periodic trapezoid rule.  Two-sphere: Gauss-Legendre in the polar
    coordinate x = xi_1 (split at x = 0) times the trapezoid rule in azimuth.
    """
    p = as_exponent(p)
    if h.n == 2:
        th = 2.0 * math.pi * np.arange(points) / points
        xi = np.stack([np.cos(th), np.sin(th)], axis=-1)
        vals = np.abs(h(xi))
        if p is INF:
            return float(vals.max())
        return float((2.0 * math.pi / points * np.sum(vals ** p)) ** (1.0 / p))
    if h.n == 3:
        m = max(16, points // 16)
        xg, wg = _gauss_legendre(m)
        x = np.concatenate([0.5 * (xg - 1.0), 0.5 * (xg + 1.0)])
        wx = np.concatenate([0.5 * wg, 0.5 * wg])
        naz = max(16, points // 64)
        psi = 2.0 * math.pi * np.arange(naz) / naz
        X, PSI = np.meshgrid(x, psi, indexing="ij")
        s = np.sqrt(np.maximum(0.0, 1.0 - X * X))
        xi = np.stack([X, s * np.cos(PSI), s * np.sin(PSI)], axis=-1)
        vals = np.abs(h(xi))
        if p is INF:
            return float(vals.max())
        return float((np.sum(wx[:, None] * vals ** p) * 2.0 * math.pi / naz) ** (1.0 / p))
    raise DimensionError("numerical sphere norms are available for n = 2, 3 only")


@dataclass(frozen=True)
class SeparableFunction:
    """f(x) = radial(|x|) * angular(x / |x|)."""

    radial: RadialProfile
    angular: AngularFactor

    @property
    def n(self) -> int:
        return self.angular.n

    def angular_norm(self, p) -> float:
        return self.angular.lp_norm(p)


def as_separable(f, n: int) -> SeparableFunction:
    if isinstance(f, SeparableFunction):
        if f.n != n:
            raise DimensionError(f"function lives in dimension {f.n}, space in {n}")
        return f
    if isinstance(f, RadialProfile):
        return SeparableFunction(f, ConstantAngular(n, 1.0))
    raise ParamError(f"expected a radial profile or separable function, got {type(f).__name__}")


def radialize(f) -> RadialProfile:
    """Spherical mean rho -> omega_n^{-1} int h dsigma * g(rho)."""
    if isinstance(f, RadialProfile):
        return f
    if f.angular.is_constant and f.angular.c == 1.0:
        return f.radial
    return f.radial.scaled(f.angular.mean())
