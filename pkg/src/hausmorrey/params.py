"""Exponent and index tuples for the mixed radial-angular Morrey-type spaces.

Infinite exponents are the enum member ``INF``, never ``float('inf')``, so
code that dispatches on regime can test ``is INF`` exactly.  Raw floats equal
to infinity (or the string ``"inf"``) are converted on construction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple, Union

from .errors import DimensionError, NontrivialityViolation, ParamError, SplitMismatch

HOLDER_TOL = 1e-12


class Infinity(enum.Enum):
    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Infinity.INF
Exponent = Union[float, Infinity]


class Family(enum.Enum):
    LOCAL = "local"
    COMPLEMENTARY = "complementary"

    def mirrored(self) -> "Family":
        return Family.COMPLEMENTARY if self is Family.LOCAL else Family.LOCAL


def as_exponent(x) -> Exponent:
    """Coerce user input to an exponent in (0, inf]."""
    if x is INF:
        return INF
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "+inf"):
            return INF
        x = float(s)
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParamError(f"exponent must be a real number or 'inf', got {x!r}")
    x = float(x)
    if math.isnan(x):
        raise ParamError("exponent is NaN")
    if math.isinf(x) and x > 0:
        return INF
    if not x > 0:
        raise ParamError(f"exponent must lie in (0, inf], got {x}")
    return x


def is_inf(x: Exponent) -> bool:
    return x is INF


def recip(x: Exponent) -> float:
    """1/x with 1/inf = 0."""
    return 0.0 if x is INF else 1.0 / x


def as_family(x) -> Family:
    if isinstance(x, Family):
        return x
    try:
        return Family(str(x).strip().lower())
    except ValueError:
        raise ParamError(f"unknown family {x!r}") from None


def _real(name: str, x) -> float:
    if isinstance(x, bool):
        raise ParamError(f"{name} must be real")
    try:
        v = float(x)
    except (TypeError, ValueError):
        raise ParamError(f"{name} must be real, got {x!r}") from None
    if not math.isfinite(v):
        raise ParamError(f"{name} must be finite, got {x!r}")
    return v


@dataclass(frozen=True)
class SpaceParams:
    n: int
    p: Exponent
    p_tilde: Exponent
    q: Exponent
    lam: float
    alpha: float = 0.0
    family: Family = Family.LOCAL

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ParamError(f"dimension must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        for name in ("p", "p_tilde", "q"):
            object.__setattr__(self, name, as_exponent(getattr(self, name)))
        object.__setattr__(self, "lam", _real("lambda", self.lam))
        object.__setattr__(self, "alpha", _real("alpha", self.alpha))
        object.__setattr__(self, "family", as_family(self.family))

    def mirrored(self) -> "SpaceParams":
        """Negate the Morrey index and swap local/complementary."""
        return replace(self, lam=-self.lam, family=self.family.mirrored())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": _exp_out(self.p),
            "p_tilde": _exp_out(self.p_tilde),
            "q": _exp_out(self.q),
            "lambda": self.lam,
            "alpha": self.alpha,
            "family": self.family.value,
        }


def _exp_out(x: Exponent):
    return "inf" if x is INF else x


@dataclass(frozen=True)
class FactorParams:
    """Exponents of one input factor of a multilinear operator.

    ``q`` may be left as None; it is then derived from the aggregate as
    q * p_tilde_i / p_tilde, which is the only choice that makes the
    radial Hölder step close up.
    """

    p: Exponent
    p_tilde: Exponent
    lam: float
    q: Optional[Exponent] = None
    n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "p", as_exponent(self.p))
        object.__setattr__(self, "p_tilde", as_exponent(self.p_tilde))
        object.__setattr__(self, "lam", _real("lambda_i", self.lam))
        if self.q is not None:
            object.__setattr__(self, "q", as_exponent(self.q))
        if self.n is not None:
            object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class MultilinearParams:
    space: SpaceParams
    factors: Tuple[FactorParams, ...]
    sharp: bool = False
    modified: bool = False

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def n(self) -> int:
        return self.space.n

    def factor_dims(self) -> Tuple[int, ...]:
        return tuple(f.n if f.n is not None else self.space.n for f in self.factors)

    def factor_q(self, i: int) -> Exponent:
        f = self.factors[i]
        if f.q is not None:
            return f.q
        s = self.space
        if s.q is INF:
            return INF
        if s.p_tilde is INF or f.p_tilde is INF:
            raise ParamError("factor q must be given when radial exponents are infinite")
        return s.q * f.p_tilde / s.p_tilde

    def factor_space(self, i: int) -> SpaceParams:
        """The space the i-th input is measured in."""
        f = self.factors[i]
        return SpaceParams(
            n=self.space.n,
            p=f.p,
            p_tilde=f.p_tilde,
            q=self.factor_q(i),
            lam=f.lam,
            alpha=self.space.alpha,
            family=self.space.family,
        )

    @classmethod
    def from_factors(
        cls,
        n: int,
        factors: Sequence[FactorParams],
        q: Exponent,
        alpha: float = 0.0,
        family=Family.LOCAL,
        sharp: bool = False,
        modified: bool = False,
    ) -> "MultilinearParams":
        def agg(xs):
            s = sum(recip(x) for x in xs)
            return INF if s == 0 else 1.0 / s

        factors = tuple(factors)
        space = SpaceParams(
            n=n,
            p=agg(f.p for f in factors),
            p_tilde=agg(f.p_tilde for f in factors),
            q=q,
            lam=sum(f.lam for f in factors),
            alpha=alpha,
            family=family,
        )
        return cls(space=space, factors=factors, sharp=sharp, modified=modified)


@dataclass(frozen=True)
class ValidatedParams:
    """A parameter tuple that passed validation, with its admissible regimes."""

    raw: Union[SpaceParams, MultilinearParams]
    regimes: frozenset = field(default_factory=frozenset)

    def __getattr__(self, name):
        # only reached for attributes not defined on the wrapper itself
        if name == "raw":
            raise AttributeError(name)
        return getattr(self.raw, name)

    @property
    def space(self) -> SpaceParams:
        return self.raw if isinstance(self.raw, SpaceParams) else self.raw.space


def _check_nontrivial(lam: float, q: Exponent, family: Family, who: str) -> None:
    if family is Family.LOCAL:
        ok = lam >= 0 if q is INF else lam > 0
        rule = "local spaces need lambda > 0 for finite q and lambda >= 0 for q = inf"
    else:
        ok = lam <= 0 if q is INF else lam < 0
        rule = "complementary spaces need lambda < 0 for finite q and lambda <= 0 for q = inf"
    if not ok:
        raise NontrivialityViolation(f"{who}: lambda={lam}, q={q}; {rule}")


def scaling_index(s: SpaceParams) -> float:
    """The index sigma with ||f(delta .)|| = delta**(-sigma) ||f||.

    For finite p~ it is (n + alpha)/p~ - lambda.  When p~ = inf the weight
    enters through rho**(alpha/p) inside the supremum, giving alpha/p - lambda.
    """
    if s.p_tilde is not INF:
        return (s.n + s.alpha) / s.p_tilde - s.lam
    return s.alpha * recip(s.p) - s.lam


def _ge1(x: Exponent) -> bool:
    return x is INF or x >= 1


def _lt1(x: Exponent) -> bool:
    return x is not INF and x < 1


def _space_regimes(s: SpaceParams) -> set:
    prefix = "local" if s.family is Family.LOCAL else "complementary"
    out = set()
    if _ge1(s.p) and _ge1(s.p_tilde) and _ge1(s.q):
        out.add(f"{prefix}_upper")
    if _lt1(s.p) and _lt1(s.p_tilde) and _lt1(s.q):
        out.add(f"{prefix}_reverse")
    if _lt1(s.p) or _lt1(s.p_tilde) or _lt1(s.q):
        out.add("quasi_norm")
    return out


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= HOLDER_TOL * max(1.0, abs(a), abs(b))


def validate_params(raw) -> ValidatedParams:
    """Check a space or multilinear tuple and tag the regimes it belongs to."""
    if isinstance(raw, ValidatedParams):
        return raw
    if isinstance(raw, SpaceParams):
        return ValidatedParams(raw, frozenset(_validate_space(raw)))
    if isinstance(raw, MultilinearParams):
        return ValidatedParams(raw, frozenset(_validate_multi(raw)))
    raise ParamError(f"cannot validate {type(raw).__name__}")


def _validate_space(s: SpaceParams) -> set:
    if s.n < 2:
        raise DimensionError(f"n must be at least 2, got {s.n}")
    _check_nontrivial(s.lam, s.q, s.family, "space")
    return _space_regimes(s)


def _validate_multi(mp: MultilinearParams) -> set:
    s = mp.space
    regimes = _validate_space(s)
    if mp.m < 1:
        raise ParamError("need at least one factor")
    dims = mp.factor_dims()
    if any(d < 1 for d in dims):
        raise DimensionError(f"factor dimensions must be positive, got {dims}")
    if (mp.modified or s.family is Family.COMPLEMENTARY) and any(d != s.n for d in dims):
        raise DimensionError(f"modified operators need every n_i = n = {s.n}, got {dims}")

    inv_p = sum(recip(f.p) for f in mp.factors)
    inv_pt = sum(recip(f.p_tilde) for f in mp.factors)
    if not _close(inv_p, recip(s.p)):
        raise SplitMismatch(f"sum of 1/p_i = {inv_p!r} but 1/p = {recip(s.p)!r}")
    if not _close(inv_pt, recip(s.p_tilde)):
        raise SplitMismatch(f"sum of 1/p~_i = {inv_pt!r} but 1/p~ = {recip(s.p_tilde)!r}")
    lam_sum = sum(f.lam for f in mp.factors)
    if not _close(lam_sum, s.lam):
        raise SplitMismatch(f"sum of lambda_i = {lam_sum!r} but lambda = {s.lam!r}")
    for i, f in enumerate(mp.factors):
        _check_nontrivial(f.lam, s.q, s.family, f"factor {i + 1}")

    all_sup = all(f.p_tilde is INF for f in mp.factors)
    if all_sup:
        qs = [mp.factor_q(i) for i in range(mp.m)]
        inv_q = sum(recip(x) for x in qs)
        if not _close(inv_q, recip(s.q)):
            raise SplitMismatch(f"sum of 1/q_i = {inv_q!r} but 1/q = {recip(s.q)!r}")
    else:
        for i, f in enumerate(mp.factors):
            if f.q is None or f.p_tilde is INF:
                continue
            derived = INF if s.q is INF else s.q * f.p_tilde / s.p_tilde
            if (derived is INF) != (f.q is INF) or (
                derived is not INF and not _close(derived, f.q)
            ):
                raise SplitMismatch(f"factor {i + 1}: q_i = {f.q} but q p~_i / p~ = {derived}")

    prefix = "" if s.family is Family.LOCAL else "complementary_"
    out = set(regimes)
    out.add(prefix + ("multilinear_sup" if all_sup else "multilinear_mixed"))

    if mp.sharp:
        if all_sup:
            if s.q is INF or any(mp.factor_q(i) is INF for i in range(mp.m)):
                raise ParamError("sharpness check needs finite q and q_i")
            ok = all(_close(s.lam * s.q, f.lam * mp.factor_q(i)) for i, f in enumerate(mp.factors))
            rule = "lambda q = lambda_i q_i"
        else:
            if s.p is INF or any(f.p is INF for f in mp.factors):
                raise ParamError("sharpness check needs finite p and p_i")
            ok = all(_close(s.lam * s.p, f.lam * f.p) for f in mp.factors)
            rule = "lambda p = lambda_i p_i"
        if not ok:
            raise ParamError(f"sharpness flag set but {rule} fails")
        out.add("sharp")
        if not all_sup and s.p_tilde is not INF and all(
            _close(s.lam * s.p_tilde, f.lam * f.p_tilde) for f in mp.factors
        ):
            out.add("sharp_radial")
    return out
