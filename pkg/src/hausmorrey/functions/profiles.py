"""Radial profiles g with f(x) = g(|x|).

A profile knows where it is not smooth (``breakpoints``), where it can be
nonzero (``support``) and how it behaves at 0 and at infinity (``hint0`` and
``hint_inf``).  The quadrature layer uses these to align panels and to decide
convergence analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from ..errors import EpsTooLarge, ParamError
from ..params import INF, Family, SpaceParams, scaling_index, validate_params
from ..quadrature import EndHint


class RadialProfile:
    hint0: EndHint
    hint_inf: EndHint
    breakpoints: Tuple[float, ...] = ()
    support: Tuple[float, float] = (0.0, math.inf)

    def __call__(self, rho):
        raise NotImplementedError

    def scaled(self, c: float) -> "RadialProfile":
        return Scaled(float(c), self)

    def dilated(self, delta: float) -> "RadialProfile":
        return Dilated(float(delta), self)

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_dict()})"


class ZeroProfile(RadialProfile):
    hint0 = EndHint.zero()
    hint_inf = EndHint.zero()
    support = (1.0, 1.0)

    def __call__(self, rho):
        return np.zeros_like(np.asarray(rho, dtype=float))

    def to_dict(self):
        return {"variant": "zero"}


class PowerCutoff(RadialProfile):
    """coef * rho**beta on rho > 1 (side "outer") or on rho < 1 (side "inner")."""

    def __init__(self, beta: float, side: str = "outer", coef: float = 1.0):
        if side not in ("outer", "inner"):
            raise ParamError(f"side must be 'outer' or 'inner', got {side!r}")
        self.beta = float(beta)
        self.side = side
        self.coef = float(coef)
        self.breakpoints = (1.0,)
        if side == "outer":
            self.hint0, self.hint_inf = EndHint.zero(), EndHint.power(self.beta)
            self.support = (1.0, math.inf)
        else:
            self.hint0, self.hint_inf = EndHint.power(self.beta), EndHint.zero()
            self.support = (0.0, 1.0)

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        inside = rho > 1.0 if self.side == "outer" else (rho < 1.0) & (rho > 0)
        safe = np.where(inside, rho, 1.0)
        return np.where(inside, self.coef * safe ** self.beta, 0.0)

    def to_dict(self):
        return {"variant": f"power_cutoff_{self.side}", "beta": self.beta, "coef": self.coef}


def power_cutoff_outer(beta: float) -> PowerCutoff:
    return PowerCutoff(beta, "outer")


def power_cutoff_inner(beta: float) -> PowerCutoff:
    return PowerCutoff(beta, "inner")


class Tabulated(RadialProfile):
    """Monotone cubic (PCHIP) interpolation of (knot, value) pairs.

    Outside the knot range the profile is zero, or holds the end values when
    ``extrapolation="constant"``.
    """

    def __init__(self, knots: Sequence[float], values: Sequence[float], extrapolation: str = "zero"):
        knots = np.asarray(knots, dtype=float)
        values = np.asarray(values, dtype=float)
        if knots.ndim != 1 or knots.shape != values.shape or knots.size < 2:
            raise ParamError("tabulated profile needs two equal-length lists of at least two entries")
        if not np.all(knots > 0) or not np.all(np.diff(knots) > 0):
            raise ParamError("tabulated knots must be positive and strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ParamError("tabulated values must be finite")
        if extrapolation not in ("zero", "constant"):
            raise ParamError(f"unknown extrapolation {extrapolation!r}")
        self.knots, self.values, self.extrapolation = knots, values, extrapolation
        self._interp = PchipInterpolator(knots, values, extrapolate=False)
        ends = (float(knots[0]), float(knots[-1]))
        inner = tuple(float(k) for k in knots[1:-1]) if knots.size <= 66 else ()
        self.breakpoints = (ends[0],) + inner + (ends[1],)
        if extrapolation == "zero":
            self.hint0 = self.hint_inf = EndHint.zero()
            self.support = ends
        else:
            self.hint0 = EndHint.power(0.0) if values[0] != 0 else EndHint.zero()
            self.hint_inf = EndHint.power(0.0) if values[-1] != 0 else EndHint.zero()
            self.support = (0.0 if values[0] != 0 else ends[0], math.inf if values[-1] != 0 else ends[1])

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = self._interp(rho)
        if self.extrapolation == "zero":
            fill_lo = fill_hi = 0.0
        else:
            fill_lo, fill_hi = self.values[0], self.values[-1]
        out = np.where(rho < self.knots[0], fill_lo, out)
        out = np.where(rho > self.knots[-1], fill_hi, out)
        return np.nan_to_num(out, nan=0.0)

    @classmethod
    def from_csv(cls, path, extrapolation: str = "zero") -> "Tabulated":
        """Read two columns (knot, value); a non-numeric first row is a header."""
        import csv

        knots, values = [], []
        with open(path, newline="") as fh:
            for i, row in enumerate(csv.reader(fh)):
                if not row or all(not c.strip() for c in row):
                    continue
                try:
                    k, v = float(row[0]), float(row[1])
                except (ValueError, IndexError):
                    if i == 0:
                        continue
                    raise ParamError(f"{path}: bad row {i + 1}: {row}") from None
                knots.append(k)
                values.append(v)
        return cls(knots, values, extrapolation)

    def to_dict(self):
        return {
            "variant": "tabulated",
            "knots": self.knots.tolist(),
            "values": self.values.tolist(),
            "extrapolation": self.extrapolation,
        }


class Scaled(RadialProfile):
    def __init__(self, c: float, inner: RadialProfile):
        self.c, self.inner = float(c), inner
        self.breakpoints = inner.breakpoints
        if self.c == 0:
            self.hint0 = self.hint_inf = EndHint.zero()
            self.support = (1.0, 1.0)
        else:
            self.hint0, self.hint_inf = inner.hint0, inner.hint_inf
            self.support = inner.support

    def __call__(self, rho):
        return self.c * self.inner(rho)

    def to_dict(self):
        return {"variant": "scaled", "c": self.c, "inner": self.inner.to_dict()}


class Dilated(RadialProfile):
    """rho -> inner(delta * rho)."""

    def __init__(self, delta: float, inner: RadialProfile):
        if not delta > 0 or not math.isfinite(delta):
            raise ParamError(f"dilation factor must be positive, got {delta}")
        self.delta, self.inner = float(delta), inner
        self.breakpoints = tuple(b / self.delta for b in inner.breakpoints)
        self.hint0, self.hint_inf = inner.hint0, inner.hint_inf
        self.support = (inner.support[0] / self.delta, inner.support[1] / self.delta)

    def __call__(self, rho):
        return self.inner(self.delta * np.asarray(rho, dtype=float))

    def to_dict(self):
        return {"variant": "dilated", "delta": self.delta, "inner": self.inner.to_dict()}


class Combination(RadialProfile):
    """A finite linear combination sum c_k g_k."""

    def __init__(self, terms: Sequence[Tuple[float, RadialProfile]]):
        self.terms = [(float(c), g) for c, g in terms if c != 0]
        live = [g for _, g in self.terms]
        self.breakpoints = tuple(sorted({b for g in live for b in g.breakpoints}))
        if not live:
            self.hint0 = self.hint_inf = EndHint.zero()
            self.support = (1.0, 1.0)
            return
        self.hint0 = min((g.hint0 for g in live), key=lambda h: h.at_zero())
        self.hint_inf = max((g.hint_inf for g in live), key=lambda h: h.at_inf())
        self.support = (min(g.support[0] for g in live), max(g.support[1] for g in live))

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = np.zeros_like(rho)
        for c, g in self.terms:
            out = out + c * g(rho)
        return out

    def to_dict(self):
        return {"variant": "combination", "terms": [[c, g.to_dict()] for c, g in self.terms]}


class FunctionProfile(RadialProfile):
    """Wrap a vectorised callable with explicitly supplied metadata."""

    def __init__(
        self,
        func: Callable,
        hint0: EndHint,
        hint_inf: EndHint,
        breakpoints: Sequence[float] = (),
        support: Tuple[float, float] = (0.0, math.inf),
        label: str = "function",
    ):
        self.func = func
        self.hint0, self.hint_inf = hint0, hint_inf
        self.breakpoints = tuple(sorted(float(b) for b in breakpoints))
        self.support = support
        self.label = label

    def __call__(self, rho):
        return np.asarray(self.func(np.asarray(rho, dtype=float)), dtype=float)

    def to_dict(self):
        return {"variant": self.label}


def make_extremizer(params, eps: float) -> PowerCutoff:
    """The power cutoff rho**beta chi_{rho > 1} that nearly attains a sharp constant.

    beta = -sigma - eps with sigma the scaling index of the space, that is
    beta = lambda - (n + alpha)/p~ - eps for finite p~.  On local spaces eps
    must stay below lambda so that beta + (n + alpha)/p~ remains positive.
    """
    s = validate_params(params).space
    eps = float(eps)
    if not eps > 0:
        raise ParamError(f"eps must be positive, got {eps}")
    beta = -scaling_index(s) - eps
    if s.family is Family.LOCAL and not eps < s.lam:
        raise EpsTooLarge(f"eps = {eps} leaves beta + (n + alpha)/p~ = {s.lam - eps} <= 0")
    return PowerCutoff(beta, "outer")
