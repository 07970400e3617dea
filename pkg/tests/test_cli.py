import json

import numpy as np
import pytest
from click.testing import CliRunner

from bianchilab import cli, reports
from bianchilab.errors import ConfigError


def test_validate_config_reports_json_pointer():
    with pytest.raises(ConfigError) as exc:
        reports.validate_config({"kind": "flow", "n_points": 0})
    assert exc.value.pointer == "/n_points"
    with pytest.raises(ConfigError):
        reports.validate_config({"kind": "no-such-kind"})
    with pytest.raises(ConfigError):
        reports.validate_config({})


def test_run_is_deterministic_given_config():
    cfg = {"kind": "brackets", "n_points": 10, "seed": 3}
    r1 = reports.run(dict(cfg))
    r2 = reports.run(dict(cfg))
    for a, b in zip(r1["results"], r2["results"]):
        assert a["name"] == b["name"]
        assert a["residual"] == b["residual"]


def test_run_writes_artifacts_atomically(tmp_path):
    out = tmp_path / "out"
    cfg = {"kind": "curvature", "metrics": [{"name": "g_II"}], "n_points": 2}
    report = reports.run(cfg, out_dir=str(out), fmt="csv")
    assert report["passed"]
    assert (out / "curvature-report.json").exists()
    assert (out / "curvature-report.csv").exists()
    assert (out / "curvature-report.png").exists()
    assert not list(out.glob("*.tmp"))
    body = json.loads((out / "curvature-report.json").read_text())
    assert body["artifact_version"] == reports.ARTIFACT_VERSION
    assert body["config"]["kind"] == "curvature"


def test_cli_list_census():
    runner = CliRunner()
    res = runner.invoke(cli.main, ["list", "bianchi-ii"])
    assert res.exit_code == 0
    assert "6 entries" in res.output
    for name in ("g_II", "G_II", "g_T", "g_K", "g_E", "g_KE"):
        assert name in res.output


def test_cli_list_unknown_filter_is_usage_error():
    runner = CliRunner()
    res = runner.invoke(cli.main, ["list", "no-such-family"])
    assert res.exit_code == cli.EXIT_USAGE


def test_cli_list_full_manifest_stable():
    runner = CliRunner()
    a = runner.invoke(cli.main, ["list", "--format", "json"])
    b = runner.invoke(cli.main, ["list", "--format", "json"])
    assert a.exit_code == 0 and a.output == b.output
    rows = json.loads(a.output)
    assert [r["name"] for r in rows] == sorted(r["name"] for r in rows)


def test_cli_invalid_config_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "flow", "n_points": 0}))
    runner = CliRunner()
    res = runner.invoke(cli.main, ["flow", "--config", str(bad)])
    assert res.exit_code == cli.EXIT_USAGE


def test_cli_kind_mismatch_exit_code(tmp_path):
    cfgp = tmp_path / "c.json"
    cfgp.write_text(json.dumps({"kind": "flow"}))
    runner = CliRunner()
    res = runner.invoke(cli.main, ["curvature", "--config", str(cfgp)])
    assert res.exit_code == cli.EXIT_USAGE


def test_cli_passing_run_exit_zero(tmp_path):
    cfgp = tmp_path / "c.json"
    cfgp.write_text(json.dumps(
        {"kind": "brackets", "n_points": 5, "seed": 1}))
    runner = CliRunner()
    res = runner.invoke(cli.main, ["brackets", "--config", str(cfgp),
                                   "--out", str(tmp_path / "o")])
    assert res.exit_code == 0, res.output
    assert "checks passed" in res.output
    assert (tmp_path / "o" / "brackets-report.png").exists()


def test_flow_zero_momentum_drifts_are_zero(tmp_path):
    cfg = {"kind": "flow", "metrics": [{"name": "g_II"}],
           "flow": {"x0": [0.0, 2.0, 0.3, -0.1], "pi0": [0.0, 0.0, 0.0, 0.0],
                    "dt": 0.01, "n_steps": 20}}
    report = reports.run(cfg)
    assert report["passed"]
    assert all(r["residual"] == 0.0 for r in report["results"])


def test_multicentre_audit_runner():
    report = reports.run({"kind": "multicentre-audit", "n_points": 5})
    assert report["passed"]
    assert len(report["results"]) == 28  # two checks per registered potential
