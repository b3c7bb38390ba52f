"""Experiment configuration files.

A config is a YAML mapping.  Exponents may be written as ``inf``.  Example::

    experiment: sweep
    constant: hardy
    params: {n: 2, p: 2, p_tilde: 2, q: 2, lambda: 0.5, alpha: 0}
    sweep: {schedule: [0.2, 0.1, 0.05, 0.025], extrapolation: richardson}

Multilinear params replace p, p_tilde and lambda by a ``factors`` list of
``{p, p_tilde, lambda}`` mappings.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

import yaml

from .errors import IoError, ParamError
from .functions.angular import ConstantAngular, CosPower, OnePlusCos, SeparableFunction
from .functions.kernels import (
    BumpKernel,
    ExpPowerKernel,
    ExpRadialBilinear,
    KernelProfile,
    PowerCutoffKernel,
    ScaledKernel,
    SeparableBilinear,
)
from .functions.profiles import Dilated, PowerCutoff, RadialProfile, Scaled, Tabulated
from .params import FactorParams, MultilinearParams, SpaceParams
from .quadrature import DEFAULT_CFG, QuadConfig

EXPERIMENTS = ("norm", "apply", "constant", "sweep", "bound_check", "radialization", "upper_suite")


@dataclass
class Config:
    experiment: str
    raw: Dict[str, Any]
    base_dir: str = "."
    quad: QuadConfig = DEFAULT_CFG
    seed: Optional[int] = None
    workers: int = 1

    def get(self, key, default=None):
        return self.raw.get(key, default)

    def require(self, key):
        if key not in self.raw:
            raise ParamError(f"config needs a '{key}' entry for experiment '{self.experiment}'")
        return self.raw[key]


def _mapping(x, what) -> dict:
    if not isinstance(x, dict):
        raise ParamError(f"{what} must be a mapping, got {type(x).__name__}")
    return x


def _num(d, key, default=None):
    if key not in d:
        if default is None:
            raise ParamError(f"missing '{key}'")
        return default
    v = d[key]
    if isinstance(v, str):
        try:
            return float(v)
        except ValueError:
            raise ParamError(f"'{key}' must be a number, got {v!r}") from None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParamError(f"'{key}' must be a number, got {v!r}")
    return float(v)


def parse_params(d):
    d = _mapping(d, "params")
    family = d.get("family", "local")
    n = d.get("n")
    if n is None:
        raise ParamError("params need the dimension n")
    alpha = _num(d, "alpha", 0.0)
    if "factors" in d:
        factors = []
        for fd in d["factors"]:
            fd = _mapping(fd, "factor")
            factors.append(FactorParams(fd["p"], fd["p_tilde"], _num(fd, "lambda"), fd.get("q"), fd.get("n")))
        return MultilinearParams.from_factors(n, factors, d.get("q", 1.0), alpha, family,
                                              modified=bool(d.get("modified", False)))
    for key in ("p", "p_tilde", "q", "lambda"):
        if key not in d:
            raise ParamError(f"params need '{key}'")
    return SpaceParams(n, d["p"], d["p_tilde"], d["q"], _num(d, "lambda"), alpha, family)


def parse_kernel(d) -> Optional[KernelProfile]:
    if d is None:
        return None
    d = _mapping(d, "kernel")
    v = d.get("variant")
    if v == "exp_power":
        return ExpPowerKernel(_num(d, "a", 0.0), _num(d, "b", 1.0), _num(d, "coef", 1.0))
    if v == "bump":
        return BumpKernel(_num(d, "center", 1.0), _num(d, "width", 0.5), _num(d, "coef", 1.0))
    if v == "power_cutoff":
        return PowerCutoffKernel(_num(d, "a"), _num(d, "cut", 1.0), d.get("side", "outer"), _num(d, "coef", 1.0))
    if v == "exp_radial":
        return ExpRadialBilinear(_num(d, "a1", 0.0), _num(d, "a2", 0.0), _num(d, "b", 1.0), _num(d, "coef", 1.0))
    if v == "separable":
        ks = [parse_kernel(k) for k in d.get("factors", [])]
        if len(ks) != 2:
            raise ParamError("a separable bilinear kernel needs two factors")
        return SeparableBilinear(*ks)
    if v == "scaled":
        return ScaledKernel(_num(d, "c"), parse_kernel(d.get("inner")))
    raise ParamError(f"unknown kernel variant {v!r}")


def parse_profile(d, base_dir: str = ".") -> RadialProfile:
    d = _mapping(d, "profile")
    v = d.get("variant")
    if v in ("power_cutoff_outer", "power_cutoff_inner"):
        return PowerCutoff(_num(d, "beta"), v.rsplit("_", 1)[1], _num(d, "coef", 1.0))
    if v == "power_cutoff":
        return PowerCutoff(_num(d, "beta"), d.get("side", "outer"), _num(d, "coef", 1.0))
    if v == "tabulated":
        path = d.get("path")
        if path is None:
            return Tabulated(d["knots"], d["values"], d.get("extrapolation", "zero"))
        return Tabulated.from_csv(os.path.join(base_dir, path), d.get("extrapolation", "zero"))
    if v == "scaled":
        return Scaled(_num(d, "c"), parse_profile(d.get("inner"), base_dir))
    if v == "dilated":
        return Dilated(_num(d, "delta"), parse_profile(d.get("inner"), base_dir))
    raise ParamError(f"unknown profile variant {v!r}")


def parse_angular(d, n: int):
    d = _mapping(d, "angular")
    v = d.get("variant")
    if v == "constant":
        return ConstantAngular(n, _num(d, "c", 1.0))
    if v == "cos_power":
        return CosPower(n, _num(d, "k"))
    if v == "one_plus_cos":
        return OnePlusCos(n, _num(d, "a"))
    raise ParamError(f"unknown angular variant {v!r}")


def parse_function(d, n: int, base_dir: str = "."):
    """A profile, or a separable function when an ``angular`` entry is present."""
    d = _mapping(d, "function")
    if "radial" in d:
        g = parse_profile(d["radial"], base_dir)
        if "angular" in d:
            return SeparableFunction(g, parse_angular(d["angular"], n))
        return g
    return parse_profile(d, base_dir)


def parse_quad(d, rel_tol: Optional[float] = None) -> QuadConfig:
    cfg = DEFAULT_CFG
    if d is not None:
        d = _mapping(d, "quadrature")
        known = {f for f in QuadConfig.__dataclass_fields__}
        bad = set(d) - known
        if bad:
            raise ParamError(f"unknown quadrature settings: {sorted(bad)}")
        vals = {k: (int(v) if k in ("max_subdivisions", "points_per_decade") else float(v)) for k, v in d.items()}
        cfg = replace(cfg, **vals)
    if rel_tol is not None:
        cfg = replace(cfg, rel_tol=float(rel_tol))
    return cfg


def load_config(path, rel_tol: Optional[float] = None, seed: Optional[int] = None) -> Config:
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except OSError as e:
        raise IoError(f"cannot read config {path}: {e}") from None
    except yaml.YAMLError as e:
        raise ParamError(f"config {path} is not valid YAML: {e}") from None
    return config_from_mapping(raw, os.path.dirname(os.path.abspath(path)), rel_tol, seed)


def config_from_mapping(raw, base_dir: str = ".", rel_tol=None, seed=None) -> Config:
    raw = _mapping(raw, "config")
    exp = raw.get("experiment")
    if exp not in EXPERIMENTS:
        raise ParamError(f"experiment must be one of {', '.join(EXPERIMENTS)}, got {exp!r}")
    s = seed if seed is not None else raw.get("seed")
    if s is not None:
        if isinstance(s, bool) or int(s) != s:
            raise ParamError(f"seed must be an integer, got {s!r}")
        s = int(s)
    workers = int(raw.get("workers", 1))
    if workers < 1 or not math.isfinite(workers):
        raise ParamError("workers must be a positive integer")
    return Config(exp, raw, base_dir, parse_quad(raw.get("quadrature"), rel_tol), s, workers)
