"""Kernel profiles phi, with Phi(y) = phi(|y|) (linear) or
Phi(y1, y2) = phi(|y1|, |y2|) (bilinear)."""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..errors import ParamError
from ..quadrature import EndHint


class KernelProfile:
    arity: int = 1

    def scaled(self, c: float) -> "KernelProfile":
        if not c > 0:
            raise ParamError("kernels may only be scaled by positive factors")
        return ScaledKernel(float(c), self)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_dict()})"


class LinearKernel(KernelProfile):
    arity = 1
    hint0: EndHint
    hint_inf: EndHint
    breakpoints: Tuple[float, ...] = ()
    support: Tuple[float, float] = (0.0, math.inf)

    def __call__(self, t):
        raise NotImplementedError


class PowerCutoffKernel(LinearKernel):
    """coef * t**a on t > cut ("outer") or on t < cut ("inner")."""

    def __init__(self, a: float, cut: float = 1.0, side: str = "outer", coef: float = 1.0):
        if side not in ("outer", "inner"):
            raise ParamError(f"side must be 'outer' or 'inner', got {side!r}")
        if not cut > 0 or not coef >= 0:
            raise ParamError("need cut > 0 and coef >= 0")
        self.a, self.cut, self.side, self.coef = float(a), float(cut), side, float(coef)
        self.breakpoints = (self.cut,)
        self.support = (self.cut, math.inf) if side == "outer" else (0.0, self.cut)
        if side == "outer":
            self.hint0, self.hint_inf = EndHint.zero(), EndHint.power(self.a)
        else:
            self.hint0, self.hint_inf = EndHint.power(self.a), EndHint.zero()

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = t > self.cut if self.side == "outer" else (t < self.cut) & (t > 0)
        return np.where(inside, self.coef * np.where(inside, t, 1.0) ** self.a, 0.0)

    def to_dict(self):
        return {"variant": "power_cutoff", "a": self.a, "cut": self.cut, "side": self.side, "coef": self.coef}


class ExpPowerKernel(LinearKernel):
    """coef * t**a * exp(-b t)."""

    def __init__(self, a: float = 0.0, b: float = 1.0, coef: float = 1.0):
        if not b > 0 or not coef >= 0:
            raise ParamError("need b > 0 and coef >= 0")
        self.a, self.b, self.coef = float(a), float(b), float(coef)
        self.hint0, self.hint_inf = EndHint.power(self.a), EndHint.fast()

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.coef * t ** self.a * np.exp(-self.b * t)

    def to_dict(self):
        return {"variant": "exp_power", "a": self.a, "b": self.b, "coef": self.coef}


class BumpKernel(LinearKernel):
    """Smooth compactly supported bump coef * exp(1 - 1/(1 - s^2)), s = (t - center)/width."""

    def __init__(self, center: float = 1.0, width: float = 0.5, coef: float = 1.0):
        if not 0 < width < center:
            raise ParamError("bump needs 0 < width < center")
        self.center, self.width, self.coef = float(center), float(width), float(coef)
        self.breakpoints = (self.center - self.width, self.center + self.width)
        self.support = self.breakpoints
        self.hint0 = self.hint_inf = EndHint.zero()

    def __call__(self, t):
        s = (np.asarray(t, dtype=float) - self.center) / self.width
        inside = np.abs(s) < 1
        d = np.where(inside, 1.0 - s * s, 1.0)
        return np.where(inside, self.coef * np.exp(1.0 - 1.0 / d), 0.0)

    def to_dict(self):
        return {"variant": "bump", "center": self.center, "width": self.width, "coef": self.coef}


class FunctionKernel(LinearKernel):
    def __init__(self, func: Callable, hint0: EndHint, hint_inf: EndHint, breakpoints: Sequence[float] = (), label="function"):
        self.func, self.hint0, self.hint_inf = func, hint0, hint_inf
        self.breakpoints = tuple(float(b) for b in breakpoints)
        self.label = label

    def __call__(self, t):
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)

    def to_dict(self):
        return {"variant": self.label}


class BilinearKernel(KernelProfile):
    arity = 2
    hints0: Tuple[EndHint, EndHint]
    hints_inf: Tuple[EndHint, EndHint]
    breakpoints: Tuple[Tuple[float, ...], Tuple[float, ...]] = ((), ())
    supports: Tuple[Tuple[float, float], Tuple[float, float]] = ((0.0, math.inf), (0.0, math.inf))
    factors: Optional[Tuple[LinearKernel, LinearKernel]] = None

    def __call__(self, t1, t2):
        raise NotImplementedError


class SeparableBilinear(BilinearKernel):
    def __init__(self, k1: LinearKernel, k2: LinearKernel):
        self.factors = (k1, k2)
        self.hints0 = (k1.hint0, k2.hint0)
        self.hints_inf = (k1.hint_inf, k2.hint_inf)
        self.breakpoints = (tuple(k1.breakpoints), tuple(k2.breakpoints))
        self.supports = (tuple(k1.support), tuple(k2.support))

    def __call__(self, t1, t2):
        return self.factors[0](t1) * self.factors[1](t2)

    def to_dict(self):
        return {"variant": "separable", "factors": [k.to_dict() for k in self.factors]}


class ExpRadialBilinear(BilinearKernel):
    """coef * t1**a1 * t2**a2 * exp(-b sqrt(t1^2 + t2^2)); not separable."""

    def __init__(self, a1: float = 0.0, a2: float = 0.0, b: float = 1.0, coef: float = 1.0):
        if not b > 0 or not coef >= 0:
            raise ParamError("need b > 0 and coef >= 0")
        self.a1, self.a2, self.b, self.coef = float(a1), float(a2), float(b), float(coef)
        self.hints0 = (EndHint.power(self.a1), EndHint.power(self.a2))
        self.hints_inf = (EndHint.fast(), EndHint.fast())

    def __call__(self, t1, t2):
        t1, t2 = np.asarray(t1, dtype=float), np.asarray(t2, dtype=float)
        return self.coef * t1 ** self.a1 * t2 ** self.a2 * np.exp(-self.b * np.hypot(t1, t2))

    def to_dict(self):
        return {"variant": "exp_radial", "a1": self.a1, "a2": self.a2, "b": self.b, "coef": self.coef}


class FunctionBilinear(BilinearKernel):
    def __init__(self, func, hints0, hints_inf, breakpoints=((), ()), label="function"):
        self.func = func
        self.hints0, self.hints_inf = tuple(hints0), tuple(hints_inf)
        self.breakpoints = tuple(tuple(b) for b in breakpoints)
        self.label = label

    def __call__(self, t1, t2):
        return np.asarray(self.func(np.asarray(t1, dtype=float), np.asarray(t2, dtype=float)), dtype=float)

    def to_dict(self):
        return {"variant": self.label}


class ScaledKernel(KernelProfile):
    """c * phi for c > 0; keeps the arity and metadata of phi."""

    def __init__(self, c: float, inner: KernelProfile):
        self.c, self.inner = c, inner
        self.arity = inner.arity
        for name in ("hint0", "hint_inf", "hints0", "hints_inf", "breakpoints", "support", "supports"):
            if hasattr(inner, name):
                setattr(self, name, getattr(inner, name))
        f = getattr(inner, "factors", None)
        self.factors = None if f is None else (ScaledKernel(c, f[0]), f[1])

    def __call__(self, *t):
        return self.c * self.inner(*t)

    def to_dict(self):
        return {"variant": "scaled", "c": self.c, "inner": self.inner.to_dict()}


def is_linear(k) -> bool:
    return getattr(k, "arity", None) == 1


def is_bilinear(k) -> bool:
    return getattr(k, "arity", None) == 2
