import json
import subprocess
import sys

import pytest

from scrolljet import cli
from scrolljet.report import PLUMBING, CheckRecord, Report, check, info


def run_json(capsys, *argv):
    status = cli.main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return status, json.loads(out)


def record(data, name):
    (rec,) = [r for r in data["records"] if r["name"] == name]
    return rec


class TestCommands:
    def test_plucker(self, capsys):
        status, data = run_json(capsys, "plucker", "--degree", "3")
        assert status == 0
        vals = record(data, "plucker")["values"]
        assert (vals["total"], vals["dual_curve_part"], vals["flex_part"]) == (12, 3, 9)

    def test_classify_grassmannian(self, capsys):
        status, data = run_json(capsys, "classify", "--n", "6", "--defect", "2", "--picard-rank-one")
        assert status == 0
        rec = record(data, "classification")
        assert rec["values"]["outcomes"] == ["GrassmannianG14", "HyperplaneSectionOfG14"]
        assert rec["citation"]

    def test_scroll(self, capsys):
        status, data = run_json(capsys, "scroll", "--m", "2", "--r", "2", "--preset", "O1")
        assert status == 0
        assert record(data, "top-class")["status"] == "pass"
        assert record(data, "preset-evaluation")["values"]["c_n"] == 0

    def test_scroll_low_rank(self, capsys):
        status, data = run_json(capsys, "scroll", "--m", "3", "--r", "2")
        assert status == 0
        assert record(data, "special-case")["status"] == "info"

    def test_hqf(self, capsys):
        status, data = run_json(capsys, "hqf", "--n", "4", "--g", "0", "--e", "3", "--b", "1")
        assert status == 0
        vals = record(data, "top-class")["values"]
        assert vals["closed"] == vals["recursion"] == 4
        assert record(data, "singular-fibers")["values"]["count"] == 1

    def test_conormal(self, capsys):
        status, data = run_json(capsys, "conormal", "--N", "5", "--m", "1")
        assert status == 0
        assert record(data, "conormal")["values"]["defect"] == 2

    def test_oracle_compare_sweep(self, capsys):
        status, data = run_json(capsys, "oracle-compare", "--n-max", "5")
        assert status == 0
        assert data["summary"]["pass"] == sum(n - 1 for n in range(2, 6))

    def test_verify_identities_all_pass(self, capsys):
        status, data = run_json(capsys, "verify-identities", "--n-max", "8")
        assert status == 0
        assert data["summary"]["fail"] == 0 and data["summary"]["pass"] > 50
        for rec in data["records"]:
            if rec["status"] != "info":
                assert rec["citation"]

    def test_verify_parallel_matches_serial(self, capsys):
        _, serial = run_json(capsys, "verify-identities", "--n-max", "5", "--search-bound", "100")
        _, par = run_json(capsys, "verify-identities", "--n-max", "5", "--search-bound", "100", "--jobs", "2")
        assert serial["records"] == par["records"]


class TestExitCodes:
    def test_strict_escalates_warning(self, capsys):
        argv = ["hqf", "--n", "5", "--g", "0", "--e", "2", "--b", "1"]
        status, data = run_json(capsys, *argv)
        assert status == 0 and data["summary"]["info"] >= 1
        status, data = run_json(capsys, *argv, "--strict")
        assert status == 1
        assert record(data, "input-warning[0]")["status"] == "fail"

    def test_oracle_mismatch_names_tuple(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "cn_expansion", lambda m, r: cli.cn_closed(m, r) * 2)
        status, data = run_json(capsys, "oracle-compare", "--m", "2", "--r", "2")
        assert status == 1
        assert data["records"][0]["name"] == "oracle-compare[m=2,r=2]"

    @pytest.mark.parametrize("argv", [
        ["hqf", "--n", "4", "--g", "0", "--e", "1", "--b", "2"],
        ["scroll", "--m", "2", "--r", "1"],
        ["scroll", "--m", "2"],
        ["conormal", "--N", "2", "--m", "2"],
        ["verify-identities", "--n-max", "0"],
        ["oracle-compare", "--m", "2"],
    ])
    def test_domain_errors_exit_2(self, argv, capsys):
        assert cli.main(argv) == 2
        assert "error" in capsys.readouterr().err

    def test_usage_error_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["nonsense"])
        assert exc.value.code == 2

    def test_exit_status_is_function_of_failures(self):
        ok = Report("x", {}, [check("a", PLUMBING, True), info("b")])
        bad = Report("x", {}, [check("a", PLUMBING, False), info("b")])
        assert (ok.exit_status(), bad.exit_status()) == (0, 1)


class TestConfig:
    def test_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"command": "plucker", "degree": 4}))
        _, data = run_json(capsys, "plucker", "--config", str(cfg))
        assert data["command"]["parameters"]["degree"] == 4
        _, data = run_json(capsys, "plucker", "--config", str(cfg), "--degree", "3")
        assert record(data, "plucker")["values"]["total"] == 12

    def test_unknown_key(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"degree": 3, "colour": "red"}))
        assert cli.main(["plucker", "--config", str(cfg)]) == 2
        assert "colour" in capsys.readouterr().err

    def test_wrong_command_in_file(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"command": "hqf", "degree": 3}))
        assert cli.main(["plucker", "--config", str(cfg)]) == 2

    def test_bad_types_and_json(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"degree": "3"}))
        assert cli.main(["plucker", "--config", str(cfg)]) == 2
        cfg.write_text("{not json")
        assert cli.main(["plucker", "--config", str(cfg)]) == 2

    def test_build_rejects_non_positive_bounds(self):
        with pytest.raises(cli.ConfigError):
            cli.RunConfig.build("verify-identities", {"m_max": 0})


class TestReport:
    def test_round_trip(self, capsys):
        _, data = run_json(capsys, "verify-identities", "--n-max", "4", "--search-bound", "50")
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
        report = Report.from_json(text)
        assert report.to_json() == text
        assert Report.from_json(report.to_json()) == report

    def test_round_trip_with_rationals(self):
        from fractions import Fraction
        rep = Report("x", {"a": 1}, [info("z", v=Fraction(1, 2)), check("a", PLUMBING, True, w=[1, 2])])
        assert Report.from_json(rep.to_json()) == rep
        assert [r.name for r in rep.records] == ["a", "z"]

    def test_schema_version_checked(self):
        data = json.loads(Report("x", {}).to_json())
        data["schema_version"] = 99
        with pytest.raises(ValueError):
            Report.from_dict(data)

    def test_pass_fail_need_citation(self):
        with pytest.raises(ValueError):
            CheckRecord("a", "", "pass")

    def test_output_file_deterministic(self, tmp_path, capsys):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            assert cli.main(["scroll", "--m", "3", "--r", "3", "--preset", "O2",
                             "--format", "json", "--output", str(p)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        assert "summary:" in capsys.readouterr().out

    def test_text_table(self, capsys):
        assert cli.main(["plucker", "--degree", "3"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[-1] == "summary: 1 pass, 0 fail, 1 info"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "scrolljet.cli", "plucker", "--degree", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
