import json
import subprocess
import sys

import numpy as np
import pytest

from depbounds.cli import main, run_pipeline
from depbounds.dist import bernoulli_specs, build_distribution
from depbounds.generators import lower_bound_distribution


@pytest.fixture
def lb4_file(tmp_path):
    d = lower_bound_distribution(4, 0, 1.0 / 16)
    path = tmp_path / "lb4.json"
    path.write_text(d.to_json())
    return str(path)


@pytest.fixture
def correlated_file(tmp_path):
    d = build_distribution(bernoulli_specs(2), {(0, 0): 0.5, (1, 1): 0.5})
    path = tmp_path / "corr.json"
    path.write_text(d.to_json())
    return str(path)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_alpha_pair(correlated_file, capsys):
    code, out = run_cli(
        ["alpha", correlated_file, "--left", "0", "--right", "1"], capsys
    )
    assert code == 0
    assert json.loads(out)["alpha"] == pytest.approx(0.25)


def test_alpha_separation_lower_bound_fixture(lb4_file, capsys):
    code, out = run_cli(
        ["alpha", lb4_file, "--separation", "0", "1", "2", "3"], capsys
    )
    assert code == 0
    assert json.loads(out)["alpha_sep"] == pytest.approx(0.0625, abs=1e-12)


def test_alpha_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _ = run_cli(["alpha", str(bad), "--left", "0", "--right", "1"], capsys)
    assert code == 2


def test_alpha_missing_file(capsys):
    code, _ = run_cli(
        ["alpha", "/nonexistent.json", "--left", "0", "--right", "1"], capsys
    )
    assert code == 2


def test_cover_exact_lower_bound_fixture(lb4_file, capsys):
    code, out = run_cli(["cover", lb4_file, "--gamma", "0.0"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["chi"] == 2
    assert payload["certified"]


def test_cover_fractional(correlated_file, capsys):
    code, out = run_cli(
        ["cover", correlated_file, "--gamma", "0.2", "--mode", "fractional"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["chi_star"] == pytest.approx(1.0, abs=1e-9)


def test_bound_hoeffding(capsys):
    code, out = run_cli(
        ["bound", "--kind", "hoeffding", "-n", "100", "-t", "0.1"], capsys
    )
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.1353352832, abs=1e-9)


def test_bound_domain_error(capsys):
    code, _ = run_cli(["bound", "--kind", "lower", "-n", "7", "-t", "0"], capsys)
    assert code == 4


def test_bound_optimize_lambda(capsys):
    code, out = run_cli(
        [
            "bound", "--kind", "soft", "-n", "60", "-t", "0.3",
            "--gamma", "0.001", "--chi", "2", "--optimize-lambda",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert 0 < payload["lambda_star"] < 0.3
    assert payload["optimized"]["value"] <= payload["half_t"]["value"] + 1e-12


def test_simulate_round_trip(tmp_path, capsys):
    model = tmp_path / "model.json"
    model.write_text(
        json.dumps({"kind": "cascade_chain", "n": 4, "q": 0.5, "p": 0.1})
    )
    out_file = tmp_path / "dist.json"
    code, _ = run_cli(
        ["--out", str(out_file), "simulate", str(model)], capsys
    )
    assert code == 0
    from depbounds.dist import from_json
    from depbounds.generators import cascade_exact, chain_graph

    d = from_json(out_file.read_text())
    expected = cascade_exact(chain_graph(4), 0.5, 0.1)
    np.testing.assert_allclose(d.table, expected.table, atol=1e-12)


def test_simulate_samples(tmp_path, capsys):
    model = tmp_path / "model.json"
    model.write_text(
        json.dumps(
            {
                "kind": "markov",
                "n": 10,
                "states": [0.0, 1.0],
                "transition": [[0.9, 0.1], [0.2, 0.8]],
            }
        )
    )
    code, out = run_cli(
        ["--seed", "3", "simulate", str(model), "--samples", "50"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "mean"
    assert len(lines) == 51


def test_verify_pipeline_writes_artifacts(tmp_path, capsys):
    config = {
        "name": "tiny",
        "model": {"kind": "lower_bound", "n": 4, "t": 0, "gamma": 0.0625},
        "cover": {"mode": "whole", "gamma": 0.0625},
        "bound": {"kind": "soft", "optimize_lambda": True},
        "t_grid": [0.25, 0.5],
        "samples": 5000,
        "seed": 1,
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    code, out = run_cli(["--out", str(tmp_path), "verify", str(cfg)], capsys)
    assert code == 0
    assert (tmp_path / "tiny_report.csv").exists()
    assert (tmp_path / "tiny_summary.json").exists()
    assert (tmp_path / "tiny_tail.png").exists()
    header = (tmp_path / "tiny_report.csv").read_text().splitlines()[0]
    assert header == "t,estimate,ci_low,ci_high,bound_value,bound_kind,verdict"


def test_verify_forced_violation_exits_5(tmp_path, capsys):
    from pathlib import Path

    configs = Path(__file__).resolve().parent.parent / "configs"
    config = json.loads((configs / "lower_bound_n8_scaled.json").read_text())
    config["samples"] = 5000
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    code, _ = run_cli(["--out", str(tmp_path), "verify", str(cfg)], capsys)
    assert code == 5


def test_probe_subcommand(capsys):
    code, out = run_cli(
        [
            "probe", "--chain", "4", "--q", "0.4",
            "--p-grid", "0.05", "0.1", "--set", "0,3",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"]
    assert "no pass/fail" in payload["note"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "depbounds.cli", "bound", "--kind",
         "hoeffding", "-n", "10", "-t", "0.5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "hoeffding"


def test_pipeline_reproducible(tmp_path):
    config = {
        "name": "rep",
        "model": {"kind": "cascade_chain", "n": 6, "q": 0.5, "p": 0.1},
        "cover": {"mode": "interleaved", "mu": 3, "nu": 2, "gamma": 0.05},
        "bound": {"kind": "soft", "optimize_lambda": True},
        "t_grid": [0.2, 0.3],
        "samples": 5000,
        "seed": 11,
    }
    a = run_pipeline(config, tmp_path / "a")
    b = run_pipeline(config, tmp_path / "b")
    assert a["bounds"] == b["bounds"]
    csv_a = (tmp_path / "a" / "rep_report.csv").read_text()
    csv_b = (tmp_path / "b" / "rep_report.csv").read_text()
    assert csv_a == csv_b
