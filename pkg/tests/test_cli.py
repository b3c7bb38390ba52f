import json
import math
import shutil
import subprocess

import pytest
import yaml

from hausmorrey.cli import EXIT_ADMISSIBILITY, EXIT_NUMERICAL, EXIT_PASS, EXIT_VERDICT, demo_configs, main
from hausmorrey.config import config_from_mapping, parse_kernel, parse_params
from hausmorrey.errors import ParamError

BASE = {"n": 2, "p": 2, "p_tilde": 2, "q": 2, "lambda": 0.5, "alpha": 0}


def write(tmp_path, name, cfg):
    p = tmp_path / name
    p.write_text(yaml.safe_dump(cfg))
    return str(p)


def test_constant_prints_twelve_digits(tmp_path, capsys):
    cfg = write(tmp_path, "c1.yaml", {"experiment": "constant", "constant": "C1", "params": BASE,
                                      "kernel": {"variant": "exp_power", "a": 0, "b": 1}})
    assert main(["constant", "--config", cfg]) == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == "11.1366559937"
    assert float(out["value"]) == pytest.approx(2 * math.pi * math.sqrt(math.pi), rel=1e-11)


def test_divergent_constant_exits_2(tmp_path, capsys):
    cfg = write(tmp_path, "div.yaml", {"experiment": "constant", "constant": "C1", "params": BASE,
                                       "kernel": {"variant": "power_cutoff", "a": -0.5, "side": "inner"}})
    assert main(["constant", "--config", cfg]) == EXIT_ADMISSIBILITY
    captured = capsys.readouterr()
    assert "DivergentConstant" in captured.err and captured.out == ""


def test_inconclusive_sweep_exits_1(tmp_path, capsys):
    cfg = write(tmp_path, "s.yaml", {"experiment": "sweep", "constant": "hardy", "params": BASE,
                                     "sweep": {"schedule": [0.2]}})
    assert main(["sweep", "--config", cfg]) == EXIT_VERDICT
    assert json.loads(capsys.readouterr().out)["verdict"] == "inconclusive"


def test_nonconvergence_exits_3(tmp_path, capsys):
    cfg = write(tmp_path, "n.yaml", {"experiment": "norm", "params": BASE,
                                     "function": {"variant": "tabulated", "knots": [1, 2, 4, 8],
                                                  "values": [1, 0.5, 0.3, 0.1]},
                                     "quadrature": {"max_subdivisions": 1}})
    assert main(["norm", "--config", cfg]) == EXIT_NUMERICAL


def test_admissibility_errors_exit_2(tmp_path, capsys):
    bad = dict(BASE, **{"lambda": -0.5})  # negative lambda on a local space
    cfg = write(tmp_path, "a.yaml", {"experiment": "constant", "constant": "hardy", "params": bad})
    assert main(["constant", "--config", cfg]) == EXIT_ADMISSIBILITY
    assert main(["constant", "--config", str(tmp_path / "missing.yaml")]) == EXIT_ADMISSIBILITY
    # a sweep config handed to the norm command
    cfg = write(tmp_path, "s.yaml", {"experiment": "sweep", "constant": "hardy", "params": BASE})
    assert main(["norm", "--config", cfg]) == EXIT_ADMISSIBILITY


def test_sweep_csv_and_out(tmp_path):
    cfg = write(tmp_path, "s.yaml", {"experiment": "sweep", "constant": "hardy", "params": BASE})
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", cfg, "--format", "csv", "--out", str(out1)]) == EXIT_PASS
    assert main(["--format", "csv", "--out", str(out2), "sweep", "--config", cfg]) == EXIT_PASS
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "eps,ratio,floor,constant,normalized_ratio,verdict" and len(lines) == 5


def test_verify_needs_a_seed_for_random_corpora(tmp_path):
    cfg = {"experiment": "bound_check", "operator": "Htilde", "params": BASE,
           "kernel": {"variant": "exp_power"}, "corpus": {"count": 3}}
    path = write(tmp_path, "v.yaml", cfg)
    assert main(["verify", "--config", path]) == EXIT_ADMISSIBILITY
    assert main(["verify", "--config", path, "--seed", "4"]) == EXIT_PASS


def test_norm_and_apply(tmp_path, capsys):
    cfg = write(tmp_path, "n.yaml", {"experiment": "norm", "params": BASE,
                                     "function": {"variant": "power_cutoff_outer", "beta": -0.6}})
    assert main(["norm", "--config", cfg]) == EXIT_PASS
    res = json.loads(capsys.readouterr().out)["result"]
    assert res["value"] > 0
    cfg = write(tmp_path, "a.yaml", {"experiment": "apply", "operator": "Htilde", "params": BASE,
                                     "kernel": {"variant": "exp_power"},
                                     "function": {"variant": "power_cutoff_outer", "beta": -0.5},
                                     "r_points": [1.0]})
    assert main(["apply", "--config", cfg]) == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["values"][0] == pytest.approx(2 * math.pi * math.sqrt(math.pi) * math.erf(1), rel=1e-9)


def test_config_parsing_errors():
    with pytest.raises(ParamError):
        config_from_mapping({"experiment": "dance"})
    with pytest.raises(ParamError):
        parse_kernel({"variant": "nope"})
    with pytest.raises(ParamError):
        parse_params({"n": 2, "p": 2})
    with pytest.raises(ParamError):
        config_from_mapping({"experiment": "norm", "quadrature": {"speed": 3}})


def test_demos_are_shipped():
    names = [n for n, _ in demo_configs()]
    for want in ("hardy_sweep", "c1_constant", "c1_divergent", "htilde_upper", "htilde_reverse", "radialization"):
        assert want in names


@pytest.mark.skipif(shutil.which("hausmorrey") is None, reason="console script not installed")
def test_console_script_exit_code(tmp_path):
    cfg = write(tmp_path, "div.yaml", {"experiment": "constant", "constant": "C1", "params": BASE,
                                       "kernel": {"variant": "power_cutoff", "a": -0.5, "side": "inner"}})
    r = subprocess.run(["hausmorrey", "constant", "--config", cfg], capture_output=True, text=True)
    assert r.returncode == 2 and r.stdout == ""


def test_every_shipped_demo_passes(tmp_path, capsys):
    assert main(["demo", "--out", str(tmp_path)]) == EXIT_PASS
    lines = capsys.readouterr().err.strip().splitlines()
    assert len(lines) == len(demo_configs()) and all(l.startswith("PASS") for l in lines)
    for name, _ in demo_configs():
        rep = json.loads((tmp_path / f"{name}.json").read_text())
        if rep.get("experiment") == "extremizer_sweep":
            norm = [r["normalized"] for r in rep["records"]]
            assert all(b >= a - 1e-3 for a, b in zip(norm, norm[1:])), name
            assert all(r["ratio"] >= r["theoretical_floor"] * (1 - 1e-4) for r in rep["records"]), name
