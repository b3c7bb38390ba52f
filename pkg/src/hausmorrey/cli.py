"""Command line front end.

    hausmorrey constant --config c1.yaml
    hausmorrey sweep --config hardy_sweep.yaml --format csv --out hardy.csv
    hausmorrey verify --config htilde_upper.yaml --seed 3
    hausmorrey demo

Exit codes: 0 pass, 1 verdict failure, 2 admissibility error (including a
divergent sharp constant), 3 numerical nonconvergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from importlib import resources
from typing import List, Optional, Tuple

import numpy as np

from .config import Config, load_config, parse_function, parse_kernel, parse_params
from .errors import AdmissibilityError, DivergentConstant, HausmorreyError, IoError, NumericalError, ParamError
from .experiments import (
    ExperimentReport,
    SweepSpec,
    _clean,
    apply_operator,
    bound_check,
    emit_report,
    environment_snapshot,
    extremizer_sweep,
    load_tabulated_corpus,
    radialization_suite,
    random_power_cutoffs,
    random_separable_inputs,
    random_triples,
    run_triples,
)
from .functions.angular import SeparableFunction
from .norms import space_norm
from .operators import as_constant_kind, as_kind, sharp_constant
from .params import MultilinearParams, validate_params

EXIT_PASS, EXIT_VERDICT, EXIT_ADMISSIBILITY, EXIT_NUMERICAL = 0, 1, 2, 3

VERIFY_KINDS = ("bound_check", "radialization", "upper_suite")


def fmt_constant(x: float) -> str:
    return f"{x:.12g}"


# ----------------------------------------------------------------------------
# plain results (norm, apply, constant) share the report serializers' style


def _plain_json(d: dict) -> str:
    return json.dumps(_clean(d), sort_keys=True, indent=2) + "\n"


def _plain_csv(rows: List[Tuple], header: Tuple[str, ...]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _write(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from None


def _params(cfg: Config):
    return validate_params(parse_params(cfg.require("params"))).raw


def _inputs(cfg: Config, raw) -> tuple:
    n = raw.n
    if "inputs" in cfg.raw:
        return tuple(parse_function(d, n, cfg.base_dir) for d in cfg.raw["inputs"])
    return (parse_function(cfg.require("function"), n, cfg.base_dir),)


def _r_points(cfg: Config):
    spec = cfg.get("r_points")
    if spec is None:
        return np.logspace(-2, 2, 41)
    if isinstance(spec, dict):
        return np.logspace(math.log10(float(spec["start"])), math.log10(float(spec["stop"])), int(spec["num"]))
    return np.asarray([float(x) for x in spec])


def _need_seed(cfg: Config) -> int:
    if cfg.seed is None:
        raise ParamError("random corpora need a seed (config 'seed' or --seed)")
    return cfg.seed


# ----------------------------------------------------------------------------
# experiments


def run_norm(cfg: Config, fmt: str):
    raw = _params(cfg)
    if isinstance(raw, MultilinearParams):
        raise ParamError("norms are taken in a single space; give scalar params")
    f = _inputs(cfg, raw)[0]
    res = space_norm(f, raw, cfg.quad)
    out = {"experiment": "norm", "params": raw.to_dict(), "result": res.to_dict(),
           "environment": environment_snapshot(cfg.quad, cfg.seed)}
    if fmt == "csv":
        return _plain_csv([("value", res.value), ("error_estimate", res.error_estimate),
                           ("regime", res.regime)], ("field", "value")), EXIT_PASS
    return _plain_json(out), EXIT_PASS


def run_apply(cfg: Config, fmt: str):
    raw = _params(cfg)
    kind = as_kind(cfg.require("operator"))
    kernel = parse_kernel(cfg.get("kernel"))
    T = apply_operator(kind, kernel, _inputs(cfg, raw), raw, cfg.quad)
    r = _r_points(cfg)
    radial, angular = (T.radial, T.angular.to_dict()) if isinstance(T, SeparableFunction) else (T, None)
    vals = np.asarray(radial(r), dtype=float)
    if fmt == "csv":
        return _plain_csv(list(zip(r.tolist(), vals.tolist())), ("r", "value")), EXIT_PASS
    out = {"experiment": "apply", "operator": kind.value, "r": r.tolist(), "values": vals.tolist(),
           "angular": angular, "environment": environment_snapshot(cfg.quad, cfg.seed)}
    return _plain_json(out), EXIT_PASS


def run_constant(cfg: Config, fmt: str):
    raw = _params(cfg)
    ck = as_constant_kind(cfg.require("constant"))
    C = sharp_constant(ck, raw, parse_kernel(cfg.get("kernel")), cfg.quad, cfg.get("dims"))
    if fmt == "csv":
        return _plain_csv([(ck.value, fmt_constant(C))], ("constant_kind", "value")), EXIT_PASS
    out = {"experiment": "constant", "constant_kind": ck.value, "value": fmt_constant(C),
           "environment": environment_snapshot(cfg.quad, cfg.seed)}
    return _plain_json(out), EXIT_PASS


def _report_exit(rep: ExperimentReport) -> int:
    if "divergent_constant" in rep.summary:
        return EXIT_ADMISSIBILITY
    return EXIT_PASS if rep.passed else EXIT_VERDICT


def _emit(rep: ExperimentReport, cfg: Config, fmt: str):
    rep.environment["seed"] = cfg.seed
    return emit_report(rep, fmt), _report_exit(rep)


def run_sweep(cfg: Config, fmt: str):
    sw = cfg.get("sweep") or {}
    kw = {}
    if "schedule" in sw:
        kw["eps_schedule"] = tuple(float(e) for e in sw["schedule"])
    if "extrapolation" in sw:
        kw["extrapolation"] = str(sw["extrapolation"])
    spec = SweepSpec(cfg.require("constant"), _params(cfg), parse_kernel(cfg.get("kernel")), **kw)
    return _emit(extremizer_sweep(spec, cfg.quad, cfg.workers), cfg, fmt)


def _corpus(cfg: Config, raw, separable: bool = False):
    c = cfg.require("corpus")
    if "tabulated" in c:
        files = [os.path.join(cfg.base_dir, p) for p in c["tabulated"]]
        arity = raw.m if isinstance(raw, MultilinearParams) else 1
        return load_tabulated_corpus(files, arity)
    count = int(c.get("count", 0))
    side = c.get("side", "outer")
    if separable:
        return random_separable_inputs(_need_seed(cfg), count, raw, side)
    return random_power_cutoffs(_need_seed(cfg), count, raw, side)


def run_verify(cfg: Config, fmt: str):
    exp = cfg.experiment
    if exp == "upper_suite":
        ops = cfg.require("operators")
        count = int(cfg.get("count", 200))
        seed = _need_seed(cfg)
        triples = []
        for i, op in enumerate(ops):
            triples.extend(random_triples(op, count, seed + i, cfg.get("family", "local")))
        return _emit(run_triples(triples, cfg.quad, cfg.workers), cfg, fmt)
    raw = _params(cfg)
    kind = as_kind(cfg.require("operator"))
    kernel = parse_kernel(cfg.get("kernel"))
    if exp == "radialization":
        if "corpus" in cfg.raw:
            corpus = _corpus(cfg, raw, separable=True)
        else:
            corpus = [_inputs(cfg, raw)]
        return _emit(radialization_suite(kind, raw, kernel, corpus, cfg.quad, cfg.workers), cfg, fmt)
    rep = bound_check(kind, raw, kernel, _corpus(cfg, raw), cfg.get("direction", "upper"), cfg.quad,
                      cfg.workers, cfg.get("constant"))
    return _emit(rep, cfg, fmt)


RUNNERS = {
    "norm": (("norm",), run_norm),
    "apply": (("apply",), run_apply),
    "constant": (("constant",), run_constant),
    "sweep": (("sweep",), run_sweep),
    "verify": (VERIFY_KINDS, run_verify),
}


def run_config(cfg: Config, command: Optional[str] = None, fmt: str = "json"):
    """Run a parsed config.  Returns (serialized output, exit code)."""
    if command is None:
        command = next(c for c, (kinds, _) in RUNNERS.items() if cfg.experiment in kinds)
    kinds, fn = RUNNERS[command]
    if cfg.experiment not in kinds:
        raise ParamError(f"'{command}' cannot run a '{cfg.experiment}' config")
    return fn(cfg, fmt)


# ----------------------------------------------------------------------------
# shipped demos


def demo_configs() -> List[Tuple[str, str]]:
    """(name, path) of the shipped demo configs, sorted by name."""
    root = resources.files("hausmorrey") / "demos"
    out = []
    for entry in root.iterdir():
        if entry.name.endswith(".yaml"):
            out.append((entry.name[:-5], str(entry)))
    return sorted(out)


def run_demo(args) -> int:
    worst = EXIT_PASS
    results = []
    for name, path in demo_configs():
        t0 = time.perf_counter()
        cfg = load_config(path, args.rel_tol, args.seed)
        expect = cfg.get("expect")
        try:
            text, code = run_config(cfg, None, "json")
            outcome = json.loads(text).get("verdict", "computed")
        except DivergentConstant as e:
            text, code, outcome = _plain_json({"error": "DivergentConstant", "message": str(e)}), EXIT_ADMISSIBILITY, "DivergentConstant"
        except AdmissibilityError as e:
            text, code, outcome = _plain_json({"error": type(e).__name__, "message": str(e)}), EXIT_ADMISSIBILITY, type(e).__name__
        except NumericalError as e:
            text, code, outcome = _plain_json({"error": type(e).__name__, "message": str(e)}), EXIT_NUMERICAL, type(e).__name__
        if expect is not None:
            ok = outcome == expect
        else:
            ok = code == EXIT_PASS
        dt = time.perf_counter() - t0
        results.append({"demo": name, "outcome": outcome, "passed": ok, "seconds": round(dt, 2)})
        print(f"{'PASS' if ok else 'FAIL'}  {name:32s} {outcome:22s} {dt:7.2f}s", file=sys.stderr)
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            _write(text, os.path.join(args.out, f"{name}.json"))
        if not ok:
            worst = max(worst, EXIT_VERDICT)
    if not args.out:
        sys.stdout.write(_plain_json({"demos": [{k: v for k, v in r.items() if k != "seconds"} for r in results]}))
    return worst


# ----------------------------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags without defaults so they do not mask the top level
    p = argparse.ArgumentParser(add_help=False)

    def d(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--config", default=d(None), help="YAML experiment config")
    p.add_argument("--rel-tol", type=float, default=d(None), help="override the quadrature relative tolerance")
    p.add_argument("--seed", type=int, default=d(None), help="override the config seed")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--out", default=d(None), help="output file (a directory for demo)")
    return p


def build_parser() -> argparse.ArgumentParser:
    top = _global_flags(False)
    common = _global_flags(True)

    parser = argparse.ArgumentParser(
        prog="hausmorrey",
        description="Norms, Hausdorff operators and sharp constants on Morrey-type spaces.",
        parents=[top],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("norm", parents=[common], help="compute one space norm")
    sub.add_parser("apply", parents=[common], help="tabulate an operator output")
    sub.add_parser("constant", parents=[common], help="print a sharp constant")
    sub.add_parser("sweep", parents=[common], help="extremizer sweep")
    sub.add_parser("verify", parents=[common], help="bound, reverse bound or radialization checks")
    sub.add_parser("demo", parents=[common], help="run the shipped demo configs")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "demo":
            return run_demo(args)
        if not args.config:
            parser.error(f"'{args.command}' needs --config")
        cfg = load_config(args.config, args.rel_tol, args.seed)
        text, code = run_config(cfg, args.command, args.format)
        if args.command == "constant" and args.out is not None:
            print(json.loads(text)["value"] if args.format == "json" else text.splitlines()[1].split(",")[1])
        _write(text, args.out)
        return code
    except DivergentConstant as e:
        print(f"DivergentConstant: {e}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except AdmissibilityError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except NumericalError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except IoError as e:
        print(f"IoError: {e}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except HausmorreyError as e:  # pragma: no cover
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
