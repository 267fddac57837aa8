"""Scenario runner and CLI surfaces."""

import json
from pathlib import Path

import pytest

from wickspec.cli import main
from wickspec.scenario import Scenario, ScenarioError, run_scenario

REPO = Path(__file__).resolve().parent.parent
QUICK = REPO / "scenarios" / "quick.json"


class TestScenarioRunner:
    def test_quick_scenario_passes(self, tmp_path):
        status = run_scenario(QUICK, output_dir=tmp_path)
        assert status == 0
        bundle = json.loads((tmp_path / "report.json").read_text())
        assert bundle["summary"]["fail"] == 0
        assert bundle["summary"]["pass"] == len(bundle["results"])

    def test_deterministic_bundle(self, tmp_path):
        run_scenario(QUICK, output_dir=tmp_path / "a", make_plots=False)
        run_scenario(QUICK, output_dir=tmp_path / "b", make_plots=False)
        first = (tmp_path / "a" / "report.json").read_bytes()
        second = (tmp_path / "b" / "report.json").read_bytes()
        assert first == second

    def test_csv_and_figures_written(self, tmp_path):
        run_scenario(QUICK, output_dir=tmp_path)
        csvs = list(tmp_path.glob("*.csv"))
        assert any("indicator" in c.name for c in csvs)
        figs = list((tmp_path / "figures").glob("*.png"))
        assert figs

    def test_unresolved_reference(self, tmp_path):
        doc = {"schema_version": 1, "seed": 0,
               "checks": [{"id": "x", "op": "check-doubling",
                           "beta": "missing"}]}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(ScenarioError, match="missing"):
            run_scenario(path, output_dir=tmp_path)

    def test_unknown_op_rejected(self):
        with pytest.raises(ScenarioError, match="unknown op"):
            Scenario.from_dict({"schema_version": 1,
                                "checks": [{"id": "x", "op": "nope"}]})

    def test_empty_checks_exit_zero(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"schema_version": 1, "checks": []}))
        assert run_scenario(path, output_dir=tmp_path) == 0
        bundle = json.loads((tmp_path / "report.json").read_text())
        assert bundle["results"] == []

    def test_failing_check_gives_exit_one_and_valid_json(self, tmp_path):
        doc = {"schema_version": 1, "seed": 1,
               "cones": {"fwd": {"variant": "lorentz-forward", "dim": 2}},
               "checks": [{"id": "wrong", "op": "cone-contains",
                           "cone": "fwd", "point": [0.0, 5.0],
                           "expected": True}]}
        path = tmp_path / "failing.json"
        path.write_text(json.dumps(doc))
        assert run_scenario(path, output_dir=tmp_path,
                            make_plots=False) == 1
        bundle = json.loads((tmp_path / "report.json").read_text())
        assert bundle["summary"]["fail"] == 1
        assert bundle["results"][0]["constants"]["contains"] is False

    def test_schema_version_enforced(self, tmp_path):
        path = tmp_path / "v2.json"
        path.write_text(json.dumps({"schema_version": 2, "checks": []}))
        with pytest.raises(ScenarioError, match="schema_version"):
            run_scenario(path, output_dir=tmp_path)

    def test_duplicate_check_ids_rejected(self):
        doc = {"schema_version": 1, "profiles": {"b": {"kind": "linear"}},
               "checks": [{"id": "x", "op": "check-doubling", "beta": "b"},
                          {"id": "x", "op": "check-doubling", "beta": "b"}]}
        with pytest.raises(ScenarioError, match="duplicate"):
            Scenario.from_dict(doc)


class TestCli:
    def test_profile_conjugate_quadratic(self, capsys):
        assert main(["profile", "conjugate", "--kind", "power",
                     "--gamma", "2", "--r", "2"]) == 0
        assert json.loads(capsys.readouterr().out) == pytest.approx(1.0)

    def test_spectral_contains(self, capsys):
        assert main(["cone", "contains", "--variant", "spectral",
                     "--n", "2", "--d", "2",
                     "--point=-2,0,-1,0.5"]) == 0
        assert json.loads(capsys.readouterr().out) is True

    def test_spectral_not_contains(self, capsys):
        main(["cone", "contains", "--variant", "spectral", "--n", "2",
              "--d", "2", "--point=-2,0,1,0.5"])
        assert json.loads(capsys.readouterr().out) is False

    def test_wick_coeffs_report(self, capsys):
        assert main(["wick", "coeffs", "--kind", "inverse-factorial",
                     "--sigma", "1"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["status"] == "pass"
        assert out["constants"]["H"] == 2.0

    def test_sequence_csv(self, tmp_path, capsys):
        path = tmp_path / "seq.csv"
        main(["sequence", "defining", "--kind", "power", "--gamma", "0.5",
              "--role", "b-from-beta", "--k-max", "10",
              "--csv", str(path)])
        rows = path.read_text().strip().splitlines()
        assert rows[0] == "k,ln_a_k"
        assert len(rows) == 12

    def test_laplace_transform_value(self, capsys):
        main(["laplace", "transform", "--x", "0", "--y", "1"])
        out = json.loads(capsys.readouterr().out)
        # 1/(1 - i(0 + 1i)) = 1/2
        assert out["re"] == pytest.approx(0.5, rel=1e-8)
        assert out["im"] == pytest.approx(0.0, abs=1e-9)

    def test_space_membership(self, capsys):
        main(["space", "membership", "--function", "gaussian:1",
              "--alpha", "quadratic", "--beta", "power:0.5"])
        out = json.loads(capsys.readouterr().out)
        assert out["status"] == "pass"

    def test_trace_csv_outputs(self, tmp_path):
        lap = tmp_path / "lap.csv"
        main(["laplace", "trace", "--points", "7", "--csv", str(lap)])
        rows = lap.read_text().strip().splitlines()
        assert rows[0] == "x,re,im" and len(rows) == 8
        npt = tmp_path / "npoint.csv"
        main(["wick", "npoint-trace", "--points", "5", "--csv", str(npt)])
        assert npt.read_text().startswith("w,re,im")

    def test_run_subcommand(self, tmp_path, capsys):
        assert main(["run", str(QUICK), "--output", str(tmp_path),
                     "--no-plots"]) == 0
        assert (tmp_path / "report.json").exists()
        assert not (tmp_path / "figures").exists()
