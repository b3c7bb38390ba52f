"""Verification campaigns: extremizer sweeps, randomized bound suites and
radialization checks, with deterministic JSON/CSV reports."""

from __future__ import annotations

import csv
import io
import json
import math
import platform
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from . import __version__
from .errors import (
    CorpusError,
    DivergentConstant,
    EpsTooLarge,
    FloorViolation,
    InfiniteNorm,
    IoError,
    ParamError,
)
from .functions.angular import CosPower, OnePlusCos, SeparableFunction, radialize
from .functions.kernels import ExpPowerKernel, ExpRadialBilinear, KernelProfile, SeparableBilinear
from .functions.profiles import PowerCutoff, RadialProfile, Tabulated, make_extremizer
from .norms import space_norm
from .operators import (
    ConstantKind,
    OperatorKind,
    apply_linear,
    apply_multilinear,
    as_constant_kind,
    as_kind,
    constant_for_operator,
    reduced_kernel_bilinear,
    reduced_kernel_linear,
    sharp_constant,
)
from .params import INF, Family, FactorParams, MultilinearParams, SpaceParams, scaling_index, validate_params
from .quadrature import DEFAULT_CFG, EndHint, Integrand1D, Integrand2D, QuadConfig, integrate, tensor_integrate_2d

DEFAULT_SCHEDULE = (0.2, 0.1, 0.05, 0.025)
SHARPNESS_FRACTION = 0.95
MONOTONE_SLACK = 1e-3
BOUND_SLACK = 1e-6
FLOOR_SLACK = 1e-4

SHARPNESS_SUPPORTED = "sharpness_supported"
INCONCLUSIVE = "inconclusive"
BOUND_VIOLATED = "bound_violated"
BOUND_SATISFIED = "bound_satisfied"
VERDICTS = (SHARPNESS_SUPPORTED, INCONCLUSIVE, BOUND_VIOLATED, BOUND_SATISFIED)

PATTERN_BASED = "pattern-based"
ONLY_IF_NOTE = (
    "the sharp constant is infinite; a finite constant is necessary for boundedness, "
    "so the operator is unbounded on this space"
)

CSV_COLUMNS = ("eps", "ratio", "floor", "constant", "normalized_ratio", "verdict")


@dataclass(frozen=True)
class SweepSpec:
    constant: ConstantKind
    params: Any
    kernel: Optional[KernelProfile] = None
    eps_schedule: Tuple[float, ...] = DEFAULT_SCHEDULE
    extrapolation: str = "none"

    def __post_init__(self):
        object.__setattr__(self, "constant", as_constant_kind(self.constant))
        sched = tuple(float(e) for e in self.eps_schedule)
        object.__setattr__(self, "eps_schedule", sched)
        if not sched:
            raise ParamError("eps schedule is empty")
        if any(not e > 0 for e in sched):
            raise ParamError("eps values must be positive")
        if any(b >= a for a, b in zip(sched, sched[1:])):
            raise ParamError("eps schedule must be strictly decreasing")
        if self.extrapolation not in ("none", "richardson"):
            raise ParamError(f"unknown extrapolation {self.extrapolation!r}")
        vp = validate_params(self.params)
        for e in sched:
            _extremizers(vp.raw, e)


@dataclass
class ExperimentReport:
    experiment: str
    verdict: str
    records: List[Dict[str, Any]]
    constant: Optional[float] = None
    summary: Dict[str, Any] = field(default_factory=dict)
    environment: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict in (SHARPNESS_SUPPORTED, BOUND_SATISFIED)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "verdict": self.verdict,
            "constant": self.constant,
            "records": self.records,
            "summary": self.summary,
            "environment": self.environment,
        }


def environment_snapshot(cfg: QuadConfig, seed=None) -> dict:
    return {
        "quadrature": cfg.to_dict(),
        "seed": seed,
        "package_version": __version__,
        "numpy_version": np.__version__,
        "python": platform.python_version(),
    }


# ----------------------------------------------------------------------------
# ratios


def factor_eps(raw: MultilinearParams, eps: float) -> Tuple[float, ...]:
    """Split eps over the inputs as eps / p~_i (eps / m when p~_i = inf).

    With finite exponents the product then deviates from the critical power
    by eps / p~ in total.
    """
    return tuple(eps / f.p_tilde if f.p_tilde is not INF else eps / raw.m for f in raw.factors)


def _extremizers(raw, eps):
    if isinstance(raw, SpaceParams):
        return (make_extremizer(raw, eps),)
    return tuple(make_extremizer(raw.factor_space(i), e) for i, e in enumerate(factor_eps(raw, eps)))


def _input_spaces(raw):
    if isinstance(raw, SpaceParams):
        return (raw,)
    return tuple(raw.factor_space(i) for i in range(raw.m))


def _output_space(raw) -> SpaceParams:
    return raw if isinstance(raw, SpaceParams) else raw.space


def apply_operator(kind, kernel, inputs, raw, cfg: QuadConfig = DEFAULT_CFG):
    kind = as_kind(kind)
    n = raw.n
    if kind.arity == 1:
        return apply_linear(kind, kernel, inputs[0], n=n, cfg=cfg)
    dims = raw.factor_dims() if isinstance(raw, MultilinearParams) else (n, n)
    return apply_multilinear(kind, kernel, inputs[0], inputs[1], n=n, dims=dims, cfg=cfg)


def operator_ratio(kind, kernel, inputs, params, cfg: QuadConfig = DEFAULT_CFG) -> Tuple[float, float, float]:
    """(||T(f_1, ..)|| / prod ||f_i||, numerator, denominator)."""
    raw = validate_params(params).raw
    spaces = _input_spaces(raw)
    if len(inputs) != len(spaces):
        raise ParamError(f"{len(spaces)} inputs expected, got {len(inputs)}")
    den = 1.0
    for f, s in zip(inputs, spaces):
        v = space_norm(f, s, cfg).value
        if not v > 0:
            raise ParamError("an input has zero norm, so the ratio is undefined")
        den *= v
    T = apply_operator(kind, kernel, inputs, raw, cfg)
    num = space_norm(T, _output_space(raw), cfg).value
    return num / den, num, den


def theoretical_floor(kind, kernel, params, eps: float, cfg: QuadConfig = DEFAULT_CFG) -> float:
    """Lower bound for the ratio at the extremizers of size eps.

    With nonnegative kernels and f_i = rho^{beta_i} chi_{rho > 1},
    T(f)(rho) >= I_eps * rho^{sum beta_i} chi_{rho > 1/eps} where I_eps is
    the kernel integral int_{t_i < 1/eps} K prod t_i^{-beta_i}.  Dilation
    and monotonicity of the norm turn this into
    ratio >= I_eps * eps^{-sum beta_i - sigma} * ||F|| / prod ||f_i||
    with F = rho^{sum beta_i} chi_{rho > 1}; for one input this is
    eps^eps * I_eps.
    """
    kind = as_kind(kind)
    raw = validate_params(params).raw
    fs = _extremizers(raw, eps)
    betas = [f.beta for f in fs]
    cut = 1.0 / eps
    if kind.arity == 1:
        K = reduced_kernel_linear(kind, kernel, raw.n)
        f = Integrand1D(
            lambda t: K(t) * t ** (-betas[0]),
            K.hint0.shifted(-betas[0]), EndHint.zero(), K.breakpoints,
        )
        I = integrate(f, (0.0, cut), cfg).value
    else:
        K = reduced_kernel_bilinear(kind, kernel, raw.factor_dims())

        def func(t1, t2):
            inside = (t1 < cut) & (t2 < cut)
            return np.where(inside, K(t1, t2) * t1 ** (-betas[0]) * t2 ** (-betas[1]), 0.0)

        f2 = Integrand2D(
            func,
            tuple(K.hints0[i].shifted(-betas[i]) for i in (0, 1)),
            (EndHint.zero(), EndHint.zero()),
            tuple(tuple(K.breakpoints[i]) + (cut,) for i in (0, 1)),
            None,
            K.curve_breaks,
        )
        I = tensor_integrate_2d(f2, cfg, use_separable=False).value
    out = _output_space(raw)
    bsum = sum(betas)
    expo = -bsum - scaling_index(out)
    if len(fs) == 1:
        return eps ** expo * I
    F = PowerCutoff(bsum, "outer")
    ratio_norms = space_norm(F, out, cfg).value
    for f, s in zip(fs, _input_spaces(raw)):
        ratio_norms /= space_norm(f, s, cfg).value
    return eps ** expo * I * ratio_norms


# ----------------------------------------------------------------------------
# sweeps


def _richardson(eps: Sequence[float], vals: Sequence[float]) -> Optional[float]:
    """Limit of r(eps) = r0 + c eps^k, with k read off the log-eps slope of the last differences."""
    if len(eps) < 2:
        return None
    if len(eps) >= 3:
        (e1, e2, e3), (r1, r2, r3) = eps[-3:], vals[-3:]
        d1, d2 = r2 - r1, r3 - r2
        if d1 != 0 and d2 != 0 and d1 / d2 > 0:
            def mismatch(k):
                return (e2 ** k - e1 ** k) / (e3 ** k - e2 ** k) - d1 / d2

            lo, hi = 0.05, 20.0
            if mismatch(lo) * mismatch(hi) < 0:
                k = brentq(mismatch, lo, hi, xtol=1e-12)
                return r3 - d2 * e3 ** k / (e3 ** k - e2 ** k)
    e1, e2 = eps[-2], eps[-1]
    return vals[-1] - (vals[-1] - vals[-2]) * e2 / (e2 - e1)


def extremizer_sweep(spec: SweepSpec, cfg: QuadConfig = DEFAULT_CFG, workers: int = 1) -> ExperimentReport:
    """Ratios at the extremizers f_eps along the schedule, with the proof floors."""
    ck = spec.constant
    raw = validate_params(spec.params).raw
    C = sharp_constant(ck, raw, spec.kernel, cfg)
    kind = ck.operator

    def point(eps):
        fs = _extremizers(raw, eps)
        ratio, _, _ = operator_ratio(kind, spec.kernel, fs, raw, cfg)
        floor = theoretical_floor(kind, spec.kernel, raw, eps, cfg)
        return ratio, floor

    results = _ordered_map(point, spec.eps_schedule, workers)
    records = []
    for eps, (ratio, floor) in zip(spec.eps_schedule, results):
        if ratio < floor * (1.0 - FLOOR_SLACK):
            raise FloorViolation(f"eps = {eps}: ratio {ratio!r} is below the lower bound {floor!r}")
        records.append({
            "eps": eps,
            "ratio": ratio,
            "theoretical_floor": floor,
            "constant": C,
            "normalized": ratio / C,
        })
    normalized = [r["normalized"] for r in records]
    violated = any(r["ratio"] > C * (1.0 + BOUND_SLACK) for r in records)
    monotone = all(b >= a - MONOTONE_SLACK for a, b in zip(normalized, normalized[1:]))
    if violated:
        verdict = BOUND_VIOLATED
    elif normalized[-1] >= SHARPNESS_FRACTION and monotone:
        verdict = SHARPNESS_SUPPORTED
    else:
        verdict = INCONCLUSIVE
    summary = {
        "constant_kind": ck.value,
        "operator": kind.value,
        "final_normalized_ratio": normalized[-1],
        "monotone": monotone,
        "extremizer": PATTERN_BASED if ck.family is Family.COMPLEMENTARY else "power_cutoff",
        "params": raw.to_dict() if hasattr(raw, "to_dict") else _multi_to_dict(raw),
        "kernel": spec.kernel.to_dict() if spec.kernel is not None else None,
    }
    if spec.extrapolation == "richardson":
        summary["extrapolated_normalized_ratio"] = _richardson(spec.eps_schedule, normalized)
    return ExperimentReport("extremizer_sweep", verdict, records, C, summary, environment_snapshot(cfg))


def _multi_to_dict(raw: MultilinearParams) -> dict:
    return {
        "space": raw.space.to_dict(),
        "factors": [
            {"p": _e(f.p), "p_tilde": _e(f.p_tilde), "lambda": f.lam, "n": f.n} for f in raw.factors
        ],
    }


def _e(x):
    return "inf" if x is INF else x


# ----------------------------------------------------------------------------
# bound suites


def beta_interval(s: SpaceParams, side: str = "outer") -> Tuple[float, float]:
    """Open interval of exponents beta giving a finite nonzero norm.

    Outer cutoffs rho^beta chi_{rho > 1} need beta < -sigma on local spaces;
    the suites draw from (-sigma - 1, -sigma).  Inner cutoffs use
    (-sigma, -sigma + 1).
    """
    sig = scaling_index(s)
    if side == "outer":
        return -sig - 1.0, -sig
    return -sig, -sig + 1.0


def random_power_cutoffs(seed: int, count: int, params, side: str = "outer") -> List[tuple]:
    """Deterministic corpus of power cutoffs, one tuple of inputs per element."""
    raw = validate_params(params).raw
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(int(count)):
        element = []
        for s in _input_spaces(raw):
            lo, hi = beta_interval(s, side)
            beta = lo + (hi - lo) * rng.uniform(0.02, 0.98)
            element.append(PowerCutoff(float(beta), side, float(math.exp(rng.uniform(-1.0, 1.0)))))
        out.append(tuple(element))
    return out


def load_tabulated_corpus(paths: Sequence[str], arity: int = 1) -> List[tuple]:
    profiles = [Tabulated.from_csv(p) for p in paths]
    if len(profiles) % arity:
        raise CorpusError(f"{len(profiles)} files do not split into inputs of {arity}")
    return [tuple(profiles[i: i + arity]) for i in range(0, len(profiles), arity)]


def _ordered_map(fn, items, workers):
    items = list(items)
    if workers is None or workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _describe(f) -> dict:
    if isinstance(f, SeparableFunction):
        return {"radial": f.radial.to_dict(), "angular": f.angular.to_dict()}
    return f.to_dict()


def bound_check(kind, params, kernel, corpus, direction: str = "upper", cfg: QuadConfig = DEFAULT_CFG,
                workers: int = 1, constant_kind=None) -> ExperimentReport:
    """Check ratio <= C (upper) or ratio >= C (reverse) on every corpus element."""
    kind = as_kind(kind)
    vp = validate_params(params)
    raw = vp.raw
    if direction not in ("upper", "reverse"):
        raise ParamError(f"direction must be 'upper' or 'reverse', got {direction!r}")
    corpus = [tuple(e) if isinstance(e, (tuple, list)) else (e,) for e in corpus]
    if not corpus:
        raise CorpusError("the corpus is empty")
    out_space = _output_space(raw)
    if direction == "reverse":
        regime = "local_reverse" if out_space.family is Family.LOCAL else "complementary_reverse"
        if regime not in vp.regimes:
            raise ParamError("reverse checks need 0 < p, p~, q < 1")
    sup_variant = isinstance(raw, MultilinearParams) and all(f.p_tilde is INF for f in raw.factors)
    ck = as_constant_kind(constant_kind) if constant_kind is not None else constant_for_operator(
        kind, out_space.family, sup_variant
    )
    env = environment_snapshot(cfg)
    try:
        C = sharp_constant(ck, raw, kernel, cfg)
    except DivergentConstant as e:
        return ExperimentReport(
            "bound_check", INCONCLUSIVE, [], None,
            {"operator": kind.value, "constant_kind": ck.value, "direction": direction,
             "divergent_constant": str(e), "note": ONLY_IF_NOTE},
            env,
        )

    def one(element):
        try:
            return operator_ratio(kind, kernel, element, raw, cfg)[0]
        except InfiniteNorm as e:
            raise CorpusError(f"corpus element has an infinite norm: {e}") from None

    ratios = _ordered_map(one, corpus, workers)
    records = []
    for i, (el, r) in enumerate(zip(corpus, ratios)):
        ok = r <= C * (1.0 + BOUND_SLACK) if direction == "upper" else r >= C * (1.0 - BOUND_SLACK)
        records.append({
            "index": i,
            "ratio": r,
            "constant": C,
            "normalized": r / C,
            "holds": bool(ok),
            "input": [_describe(f) for f in el],
        })
    pick = max if direction == "upper" else min
    w = pick(range(len(records)), key=lambda i: records[i]["ratio"])
    verdict = BOUND_SATISFIED if all(r["holds"] for r in records) else BOUND_VIOLATED
    summary = {
        "operator": kind.value,
        "constant_kind": ck.value,
        "direction": direction,
        "count": len(records),
        ("max_ratio" if direction == "upper" else "min_ratio"): records[w]["ratio"],
        "witness": w,
        "kernel": kernel.to_dict() if kernel is not None else None,
    }
    return ExperimentReport("bound_check", verdict, records, C, summary, env)


def radialization_check(f, params, kernel, kind, cfg: QuadConfig = DEFAULT_CFG) -> ExperimentReport:
    """ratio(f) <= ratio(spherical mean of f) for separable inputs."""
    kind = as_kind(kind)
    raw = validate_params(params).raw
    inputs = tuple(f) if isinstance(f, (tuple, list)) else (f,)
    for g in inputs:
        if not isinstance(g, SeparableFunction):
            raise ParamError("radialization checks need separable inputs")
        if g.n not in (2, 3):
            raise ParamError("radialization checks are available for n = 2, 3")
    r_f = operator_ratio(kind, kernel, inputs, raw, cfg)[0]
    radial = tuple(radialize(g) for g in inputs)
    r_g = operator_ratio(kind, kernel, radial, raw, cfg)[0]
    holds = r_f <= r_g * (1.0 + BOUND_SLACK)
    record = {
        "ratio": r_f,
        "radialized_ratio": r_g,
        "gap": r_g - r_f,
        "strict": bool(r_f < r_g * (1.0 - 1e-9)),
        "holds": bool(holds),
        "input": [_describe(g) for g in inputs],
    }
    return ExperimentReport(
        "radialization_check",
        BOUND_SATISFIED if holds else BOUND_VIOLATED,
        [record],
        None,
        {"operator": kind.value},
        environment_snapshot(cfg),
    )


# ----------------------------------------------------------------------------
# serialization


def _clean(x):
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, (np.floating,)):
        return _clean(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def report_json(report: ExperimentReport) -> str:
    return json.dumps(_clean(report.to_dict()), sort_keys=True, indent=2) + "\n"


def report_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.records:
        w.writerow([
            _fmt(r.get("eps")),
            _fmt(r.get("ratio")),
            _fmt(r.get("theoretical_floor")),
            _fmt(r.get("constant", report.constant)),
            _fmt(r.get("normalized")),
            report.verdict,
        ])
    return buf.getvalue()


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def emit_report(report: ExperimentReport, fmt: str = "json", path=None) -> str:
    """Serialize a report; write it to ``path`` when given.  Returns the text."""
    if fmt == "json":
        text = report_json(report)
    elif fmt == "csv":
        text = report_csv(report)
    else:
        raise ParamError(f"unknown report format {fmt!r}")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as e:
            raise IoError(f"cannot write report to {path}: {e}") from None
    return text


# ----------------------------------------------------------------------------
# randomized triples


@dataclass(frozen=True)
class Triple:
    """One randomized (inputs, kernel, params) case for an operator kind."""

    kind: OperatorKind
    params: Any
    kernel: Optional[KernelProfile]
    inputs: Tuple[Any, ...]


def _rand_exponent(rng, lo, hi):
    return float(lo + (hi - lo) * rng.uniform())


def _random_space(rng, family: Family, n: int, p_tilde_min: float = 1.0) -> SpaceParams:
    alpha = _rand_exponent(rng, -0.5, 1.0)
    pt = _rand_exponent(rng, p_tilde_min, 4.0)
    p = _rand_exponent(rng, 1.0, 4.0)
    q = INF if rng.uniform() < 0.15 else _rand_exponent(rng, 1.0, 4.0)
    cap = (n + alpha) / pt
    lam = _rand_exponent(rng, 0.05, 0.95) * cap
    if family is Family.COMPLEMENTARY:
        lam = -lam
    return SpaceParams(n, p, pt, q, lam, alpha, family)


def _random_multi(rng, family: Family, n: int) -> MultilinearParams:
    alpha = _rand_exponent(rng, -0.5, 1.0)
    q = _rand_exponent(rng, 1.0, 4.0)
    factors = []
    for _ in range(2):
        pt = _rand_exponent(rng, 1.5, 6.0)
        lam = _rand_exponent(rng, 0.05, 0.95) * (n + alpha) / pt
        factors.append(FactorParams(_rand_exponent(rng, 1.5, 6.0), pt, lam if family is Family.LOCAL else -lam))
    return MultilinearParams.from_factors(n, factors, q, alpha, family)


def _input(rng, s: SpaceParams, side: str, angular: bool):
    lo, hi = beta_interval(s, side)
    beta = _rand_exponent(rng, lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo))
    g = PowerCutoff(beta, side, float(math.exp(rng.uniform(-1.0, 1.0))))
    if not angular:
        return g
    if rng.uniform() < 0.5:
        h = OnePlusCos(s.n, float(rng.uniform(-0.9, 0.9)) if s.n == 2 else float(rng.uniform(-1.0, 1.0)))
    else:
        h = CosPower(s.n, float(rng.uniform(0.0, 3.0)))
    return SeparableFunction(g, h)


def random_triples(kind, count: int, seed: int, family=Family.LOCAL) -> List[Triple]:
    """Randomized cases with a finite sharp constant and finite input norms.

    Kernels are t^a e^{-b t} type profiles with log-spaced decay rates b and
    powers a chosen so that every kernel integral converges.  Inputs are
    power cutoffs with exponents drawn from the admissible open interval;
    kinds that keep the angular factor get separable inputs half the time.
    """
    kind = as_kind(kind)
    family = Family(family) if not isinstance(family, Family) else family
    rng = np.random.default_rng(seed)
    out = []
    keeps_angle = not kind.radializes
    for _ in range(int(count)):
        n = int(rng.choice([2, 3]))
        b = float(math.exp(rng.uniform(math.log(0.3), math.log(3.0))))
        angular = keeps_angle and rng.uniform() < 0.5
        if kind.arity == 1:
            s = _random_space(rng, family, n)
            sig = scaling_index(s)
            a = max(0.0, 0.2 - sig) + float(rng.uniform(0.0, 1.5))
            kernel = ExpPowerKernel(a, b, float(math.exp(rng.uniform(-1.0, 1.0))))
            side = "outer" if family is Family.COMPLEMENTARY or rng.uniform() < 0.7 else "inner"
            out.append(Triple(kind, s, kernel, (_input(rng, s, side, angular),)))
            continue
        base = kind.base
        while True:
            mp = _random_multi(rng, family, n)
            sig = [scaling_index(mp.factor_space(i)) for i in (0, 1)]
            # the Stilde kernel decays only like t^{-n-1} along each axis
            if base is not OperatorKind.STILDE or max(sig) < n - 0.2:
                break
        a = [max(0.0, 0.2 - sg) + float(rng.uniform(0.0, 1.5)) for sg in sig]
        if base is OperatorKind.STILDE:
            kernel = ExpPowerKernel(max(a), b)
        elif rng.uniform() < 0.5:
            kernel = SeparableBilinear(ExpPowerKernel(a[0], b), ExpPowerKernel(a[1], float(math.exp(rng.uniform(-1.0, 1.0)))))
        else:
            kernel = ExpRadialBilinear(a[0], a[1], b)
        inputs = tuple(_input(rng, mp.factor_space(i), "outer", angular) for i in (0, 1))
        out.append(Triple(kind, mp, kernel, inputs))
    return out


def run_triples(triples: Sequence[Triple], cfg: QuadConfig = DEFAULT_CFG, workers: int = 1) -> ExperimentReport:
    """Upper-bound check over heterogeneous triples (one constant per triple)."""
    if not triples:
        raise CorpusError("no triples to check")

    def one(tr: Triple):
        raw = validate_params(tr.params).raw
        out = _output_space(raw)
        ck = constant_for_operator(tr.kind, out.family)
        C = sharp_constant(ck, raw, tr.kernel, cfg)
        r = operator_ratio(tr.kind, tr.kernel, tr.inputs, raw, cfg)[0]
        return ck.value, C, r

    results = _ordered_map(one, triples, workers)
    records = []
    for i, (tr, (ck, C, r)) in enumerate(zip(triples, results)):
        records.append({
            "index": i,
            "operator": tr.kind.value,
            "constant_kind": ck,
            "ratio": r,
            "constant": C,
            "normalized": r / C,
            "holds": bool(r <= C * (1.0 + BOUND_SLACK)),
        })
    w = max(range(len(records)), key=lambda i: records[i]["normalized"])
    verdict = BOUND_SATISFIED if all(r["holds"] for r in records) else BOUND_VIOLATED
    summary = {"count": len(records), "max_normalized_ratio": records[w]["normalized"], "witness": w}
    return ExperimentReport("upper_bound_suite", verdict, records, None, summary, environment_snapshot(cfg))


def random_separable_inputs(seed: int, count: int, params, side: str = "outer") -> List[tuple]:
    """Power cutoffs times nonconstant angular factors, one tuple per element."""
    raw = validate_params(params).raw
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(int(count)):
        out.append(tuple(_input(rng, s, side, True) for s in _input_spaces(raw)))
    return out


def radialization_suite(kind, params, kernel, corpus, cfg: QuadConfig = DEFAULT_CFG, workers: int = 1) -> ExperimentReport:
    """radialization_check over a corpus, merged into one report."""
    if not corpus:
        raise CorpusError("the corpus is empty")
    reps = _ordered_map(lambda el: radialization_check(el, params, kernel, kind, cfg), corpus, workers)
    records = []
    for i, rep in enumerate(reps):
        rec = dict(rep.records[0])
        rec["index"] = i
        records.append(rec)
    w = max(range(len(records)), key=lambda i: records[i]["ratio"] / records[i]["radialized_ratio"])
    verdict = BOUND_SATISFIED if all(r["holds"] for r in records) else BOUND_VIOLATED
    summary = {
        "operator": as_kind(kind).value,
        "count": len(records),
        "strict": sum(r["strict"] for r in records),
        "max_ratio_over_radialized": records[w]["ratio"] / records[w]["radialized_ratio"],
        "witness": w,
    }
    return ExperimentReport("radialization_check", verdict, records, None, summary, environment_snapshot(cfg))
