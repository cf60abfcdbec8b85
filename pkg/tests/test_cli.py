"""CLI behaviour: output formats, determinism, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qdensity.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEstimate:
    def test_json_report(self, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", "--set", "multiples:3", "--nmax", "512", "--out", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["set"] == "multiples:3"
        assert report["verdict"] == "ok"
        assert abs(report["density_estimate"] - 1 / 3) < 1e-6
        assert abs(report["extrapolated_limit"] - 3.0) < 1e-6
        assert report["per_point"][0].keys() == {"q", "F", "tail_bound", "converged"}

    def test_json_round_trips(self, capsys):
        code, out, _ = run_cli(capsys, "estimate", "--set", "multiples:2", "--nmax", "256")
        assert code == 0
        parsed = json.loads(out)
        assert json.loads(json.dumps(parsed)) == parsed

    def test_deterministic_across_runs(self, capsys):
        args = ("estimate", "--set", "finite:1,2", "--nmax", "512", "--path", "geometric:1:12")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_csv_columns(self, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", "--set", "multiples:2", "--nmax", "256", "--out", "csv",
            "--path", "geometric:1:6",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "q,F,tail_bound"
        assert len(lines) == 7
        q, f_val, tail = lines[1].split(",")
        assert float(q) == 0.5
        assert float(f_val) == 1.5  # 1 + q at q = 1/2
        assert float(tail) == 0.0

    def test_hypothesis_violation_exits_2_but_reports(self, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", "--set", "ap:1:2", "--nmax", "8192",
            "--path", "geometric:1:8", "--mode", "closed-form",
        )
        assert code == 2
        report = json.loads(out)
        assert report["verdict"] == "hypothesis-violated"
        assert report["hypothesis"]["winding_number"] >= 1

    def test_divergent_is_a_successful_run(self, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", "--set", "primes", "--nmax", "1024", "--path", "geometric:1:12"
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "divergent"

    def test_bad_path_flag(self, capsys):
        code, _, err = run_cli(capsys, "estimate", "--set", "all", "--path", "linear:3")
        assert code == 1
        assert "path" in err

    def test_output_file_has_lf_endings(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _, _ = run_cli(
            capsys, "estimate", "--set", "multiples:2", "--nmax", "128", "--output", str(target)
        )
        assert code == 0
        raw = target.read_bytes()
        assert b"\r" not in raw
        assert json.loads(raw.decode())["set"] == "multiples:2"


class TestCoeffs:
    def test_reciprocal_example(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--set", "finite:1,3", "--nmax", "3")
        assert code == 0
        assert out.splitlines() == ["index,coefficient", "0,1", "1,-1", "2,1", "3,-2"]

    @pytest.mark.parametrize(
        "which,expected",
        [
            ("indicator", ["0,1", "1,0", "2,1", "3,0", "4,1"]),
            ("cumulative", ["0,1", "1,1", "2,0", "3,0", "4,0"]),
            ("compositions", ["0,1", "1,0", "2,1", "3,0", "4,2"]),
            ("cplus", ["0,1", "1,1", "2,2", "3,2", "4,4"]),
        ],
    )
    def test_other_vectors(self, capsys, which, expected):
        code, out, _ = run_cli(
            capsys, "coeffs", "--set", "multiples:2", "--nmax", "4", "--which", which
        )
        assert code == 0
        assert out.splitlines()[1:] == expected


class TestCheck:
    def test_csv_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "check", "--set", "finite:1,3", "--radius", "0.5", "--radius", "0.9",
            "--nmax", "64",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "radius,winding_number,min_modulus_on_circle,tail_bound_on_circle,conclusive"
        assert len(lines) == 3
        assert lines[1].startswith("0.5,0,")
        assert lines[2].startswith("0.90000000000000002,1,")
        assert lines[1].endswith(",true")

    def test_json_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "check", "--set", "multiples:2", "--nmax", "256", "--out", "json"
        )
        assert code == 0
        rows = json.loads(out)
        assert rows[0]["radius"] == 0.9
        assert rows[0]["winding_number"] == 0
        assert rows[0]["conclusive"] is True


class TestOracle:
    def test_agreement_pass(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--set", "finite:1,2", "--nmax", "12")
        assert code == 0
        assert "3-way agreement: PASS" in out

    def test_budget_exceeded_message(self, capsys):
        code, _, err = run_cli(
            capsys, "oracle", "--set", "all", "--nmax", "18", "--budget", "100"
        )
        assert code == 1
        assert "budget" in err

    def test_budget_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("QDENSITY_BUDGET", "100")
        code, _, err = run_cli(capsys, "oracle", "--set", "all", "--nmax", "18")
        assert code == 1
        assert "budget" in err
        # explicit flag wins over the environment
        monkeypatch.setenv("QDENSITY_BUDGET", "100")
        code, out, _ = run_cli(
            capsys, "oracle", "--set", "all", "--nmax", "10", "--budget", "100000"
        )
        assert code == 0


class TestVariant:
    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "variant", "--set", "all", "--nmax", "32", "--head", "6")
        assert code == 0
        payload = json.loads(out)
        assert payload["radius"] == pytest.approx(0.5, abs=1e-9)
        assert payload["diverges_at_1"] is True
        assert payload["c_head"] == [1, 1, 2, 4, 8, 16]
        assert payload["cplus_head"] == [1, 2, 4, 8, 16, 32]

    def test_coeffs_out(self, capsys, tmp_path):
        target = tmp_path / "coeffs.csv"
        code, _, _ = run_cli(
            capsys, "variant", "--set", "finite:2", "--nmax", "4", "--coeffs-out", str(target)
        )
        assert code == 0
        assert target.read_text().splitlines() == [
            "index,compositions,cumulative",
            "0,1,1",
            "1,0,1",
            "2,1,2",
            "3,0,2",
            "4,1,3",
        ]


class TestErrors:
    def test_bad_set_spec_mentions_column(self, capsys):
        code, _, err = run_cli(capsys, "estimate", "--set", "ap:9:3")
        assert code == 1
        assert "invalid set spec" in err
        assert "column" in err

    def test_unreadable_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "coeffs", "--set", f"file:{tmp_path}/missing.txt")
        assert code == 1
        assert "cannot read" in err

    def test_file_truncation_error(self, capsys, tmp_path):
        short = tmp_path / "short.txt"
        short.write_text("2\n5\n")
        code, _, err = run_cli(capsys, "coeffs", "--set", f"file:{short}", "--nmax", "64")
        assert code == 1
        assert "truncation insufficient" in err


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "qdensity.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "qdensity" in proc.stdout
