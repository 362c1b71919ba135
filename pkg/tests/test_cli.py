"""Tests for the command-line interface."""

import json

import pytest

from anchormosaic import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstantsCommand:
    def test_reproduces_1d_table_row(self, capsys):
        code, out, _ = run(capsys, "constants", "--k", "1", "--n", "2..9")
        assert code == cli.EXIT_OK
        table = json.loads(out)["table"]
        published = {
            "2": (1.00, 0.27, 1.27), "3": (1.09, 0.36, 1.46), "4": (1.16, 0.42, 1.58),
            "5": (1.22, 0.45, 1.67), "6": (1.26, 0.48, 1.74), "7": (1.29, 0.50, 1.79),
            "8": (1.32, 0.51, 1.84), "9": (1.35, 0.53, 1.87),
        }
        for n, (c00, c01, d0) in published.items():
            assert round(table[n]["C[0,0]"], 2) == pytest.approx(c00)
            assert round(table[n]["C[0,1]"], 2) == pytest.approx(c01)
            assert round(table[n]["D[0]"], 2) == pytest.approx(d0)

    def test_2d_table_row(self, capsys):
        code, out, _ = run(capsys, "constants", "--k", "2", "--n", "3")
        table = json.loads(out)["table"]["3"]
        assert table["C[1,1]"] == pytest.approx(2.47, abs=0.005)
        assert table["D[2]"] == pytest.approx(2.92, abs=0.005)

    def test_zero_threshold_column(self, capsys):
        code, out, _ = run(capsys, "constants", "--k", "2", "--n", "3", "--r0", "0")
        table = json.loads(out)["table"]["3"]
        for key, value in table.items():
            if key.startswith("E["):
                assert value == 0.0

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "constants", "--k", "1", "--n", "2", "--format", "csv")
        lines = out.strip().splitlines()
        assert lines[0] == "type,ell,m,count,rate,se,predicted,z"
        assert len(lines) == 4  # three interval types


class TestSimulateCommand:
    def test_runs_and_reports(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, _, _ = run(
            capsys, "simulate", "--n", "2", "--k", "1", "--rho", "1",
            "--window", "60", "--reps", "2", "--seed", "7", "--out", str(out_path),
        )
        assert code == cli.EXIT_OK
        payload = json.loads(out_path.read_text())
        assert payload["schema_version"] == 1
        assert payload["config"]["seed"] == 7
        assert len(payload["intervals"]) == 3
        assert len(payload["simplices"]) == 2

    def test_byte_identical_reruns(self, capsys, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            code, _, _ = run(
                capsys, "simulate", "--n", "2", "--k", "1", "--window", "40",
                "--reps", "2", "--seed", "5", "--out", str(path),
            )
            assert code == cli.EXIT_OK
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_env_seed_override(self, capsys, tmp_path, monkeypatch):
        base, overridden = tmp_path / "x.json", tmp_path / "y.json"
        run(capsys, "simulate", "--n", "2", "--k", "1", "--window", "40",
            "--reps", "1", "--seed", "5", "--out", str(base))
        monkeypatch.setenv("ANCHORMOSAIC_SEED", "99")
        run(capsys, "simulate", "--n", "2", "--k", "1", "--window", "40",
            "--reps", "1", "--seed", "5", "--out", str(overridden))
        assert json.loads(base.read_text())["config"]["seed"] == 5
        assert json.loads(overridden.read_text())["config"]["seed"] == 99

    def test_csv_schema(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "--n", "2", "--k", "1", "--window", "40",
            "--reps", "2", "--seed", "3", "--format", "csv",
        )
        lines = out.strip().splitlines()
        assert lines[0] == "type,ell,m,count,rate,se,predicted,z"
        kinds = {line.split(",")[0] for line in lines[1:]}
        assert kinds == {"interval", "simplex"}

    def test_golden_report_schema(self, capsys):
        # versioned key sets pinned so downstream consumers can rely on them
        code, out, _ = run(
            capsys, "simulate", "--n", "2", "--k", "1", "--window", "40",
            "--reps", "2", "--seed", "3",
        )
        payload = json.loads(out)
        assert sorted(payload) == ["config", "intervals", "kind", "schema_version", "simplices"]
        assert payload["schema_version"] == 1
        assert sorted(payload["config"]) == [
            "buffer", "k", "n", "r0", "replicates", "rho", "seed", "window",
        ]
        for entry in payload["intervals"] + payload["simplices"]:
            assert sorted(entry) == [
                "count_mean", "ell", "m", "predicted", "rate", "se", "z",
            ]


class TestVerifyCommand:
    def test_angle(self, capsys):
        code, out, _ = run(capsys, "verify", "angle", "--n", "3")
        assert code == cli.EXIT_OK
        assert json.loads(out)["pass"] is True

    def test_gamma_lemma(self, capsys):
        code, out, _ = run(capsys, "verify", "gamma-lemma", "--seed", "1")
        assert code == cli.EXIT_OK

    def test_beta_law(self, capsys):
        code, out, _ = run(
            capsys, "verify", "beta-law", "--n", "4", "--k", "2", "--samples", "8000"
        )
        assert code == cli.EXIT_OK
        payload = json.loads(out)
        assert payload["p_half_dims"] > 0.01

    def test_bp_small(self, capsys):
        code, out, _ = run(
            capsys, "verify", "bp", "--n", "2", "--k", "1", "--m", "1",
            "--samples", "2e5", "--seed", "0",
        )
        payload = json.loads(out)
        assert payload["analytic"] == pytest.approx(9.8696044, rel=1e-6)
        assert code in (cli.EXIT_OK, cli.EXIT_STATISTICAL)


class TestErrorPaths:
    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "constants", "--k", "5", "--n", "3")
        assert code == cli.EXIT_USAGE
        assert "usage error" in err

    def test_missing_command(self, capsys):
        assert run(capsys)[0] == cli.EXIT_USAGE

    def test_numerical_error(self, capsys):
        # n <= k has no constants
        code, _, err = run(capsys, "constants", "--k", "2", "--n", "2")
        assert code == cli.EXIT_NUMERICAL
        assert "numerical error" in err
