import json
import os

import pytest

from spinbfv import __version__
from spinbfv.cli import DIFF_CHOICES, EXIT_CHECKS, EXIT_EVAL, EXIT_OK, EXIT_USAGE, atomic_write_json, main

README = os.path.join(os.path.dirname(__file__), "..", "README.md")


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps({"d": 1, "bounds": {"kmax": 2, "fdeg_max": 1, "tmax": 3}, "samples": 2}))
    return str(path)


class TestEval:
    def test_prints_canonical_form(self, capsys):
        assert main(["eval", "-d", "1", "pb(p1, x1)"]) == EXIT_OK
        assert capsys.readouterr().out == "1\n"

    def test_json(self, capsys):
        assert main(["eval", "-d", "1", "--json", "star(th1, th1)"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data == {"text": "hbar", "terms": [{"coeff": "1", "monomial": [["hbar", 1]]}]}

    def test_parse_error(self, capsys):
        assert main(["eval", "-d", "1", "x1 + y"]) == EXIT_USAGE
        assert "Parse Error" in capsys.readouterr().err

    def test_evaluation_error(self, capsys):
        assert main(["eval", "-d", "1", "eta(0, x1)"]) == EXIT_EVAL
        assert "Evaluation Error" in capsys.readouterr().err

    def test_bad_dimension(self, capsys):
        assert main(["eval", "-d", "0", "x1"]) == EXIT_USAGE


class TestUsage:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == EXIT_USAGE

    def test_bad_diff_choice(self):
        with pytest.raises(SystemExit) as info:
            main(["cohomology", "--diff", "q", "--ghost", "0", "--tdeg", "1"])
        assert info.value.code == EXIT_USAGE

    def test_missing_config(self, tmp_path, capsys):
        assert main(["verify", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE
        assert "Config Error" in capsys.readouterr().err

    def test_jobs_from_environment(self, monkeypatch, small_config):
        monkeypatch.setenv("SPINBFV_JOBS", "zero")
        assert main(["verify", "--config", small_config, "--checks", "mc_poisson"]) == EXIT_USAGE

    def test_conflicting_dimension(self, tmp_path):
        path = tmp_path / "b.json"
        path.write_text(json.dumps({"d": 2, "b_field": [[0, 1], [-1, 0]]}))
        assert main(["eval", "--config", str(path), "-d", "3", "x1"]) == EXIT_USAGE


class TestVerify:
    def test_passing_checks_write_report(self, tmp_path, small_config, capsys):
        out = tmp_path / "report.json"
        code = main(["verify", "--config", small_config, "--checks", "mc_poisson,x_closed_form", "--out", str(out)])
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert report["header"] == {
            "d": 1,
            "seed": 0,
            "bounds": {"kmax": 2, "fdeg_max": 1, "tmax": 3},
            "b_field": None,
            "version": __version__,
        }
        assert [r["status"] for r in report["results"]] == ["pass", "pass"]
        assert "mc_poisson" in capsys.readouterr().out
        assert not [p for p in tmp_path.iterdir() if p.name.startswith(".spinbfv-")]

    def test_flagged_exit_code(self, small_config, capsys):
        assert main(["verify", "--config", small_config, "--checks", "pi_theta_bracket"]) == EXIT_CHECKS
        report = json.loads(capsys.readouterr().out)
        assert report["results"][0]["status"] == "flagged"

    def test_seed_override_is_recorded(self, small_config, capsys):
        main(["verify", "--config", small_config, "--checks", "mc_poisson", "--seed", "9"])
        assert json.loads(capsys.readouterr().out)["header"]["seed"] == 9

    def test_missing_out_directory(self, tmp_path, small_config, capsys):
        out = tmp_path / "absent" / "report.json"
        assert main(["verify", "--config", small_config, "--checks", "mc_poisson", "--out", str(out)]) == EXIT_USAGE
        assert "--out directory does not exist" in capsys.readouterr().err

    def test_unwritable_out_path(self, tmp_path, small_config, capsys):
        target = tmp_path / "taken"
        target.mkdir()
        assert main(["verify", "--config", small_config, "--checks", "mc_poisson", "--out", str(target)]) == EXIT_USAGE
        assert "Cannot write report" in capsys.readouterr().err
        assert not [p for p in tmp_path.iterdir() if p.name.startswith(".spinbfv-")]

    def test_byte_identical_reruns(self, tmp_path, small_config):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            main(["verify", "--config", small_config, "--checks", "star_associativity,ck_symmetry", "--out", str(p)])
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestCohomology:
    def test_single_bidegree(self, capsys):
        assert main(["cohomology", "-d", "1", "--ghost", "-1", "--tdeg", "2", "--family"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "betti=1" in out
        assert "family_rank=1" in out
        assert "Y_2(1)" in out

    def test_window_json(self, capsys):
        code = main(["cohomology", "-d", "1", "--window", "-1", "0", "--tmax", "2", "--json", "--e2"])
        assert code == EXIT_OK
        rows = json.loads(capsys.readouterr().out)["rows"]
        assert [(r["ghost"], r["tdeg"]) for r in rows] == [(-1, 0), (-1, 1), (-1, 2), (0, 0), (0, 1), (0, 2)]
        assert all("e2_betti" in r for r in rows)

    def test_needs_a_bidegree(self, capsys):
        assert main(["cohomology", "-d", "1"]) == EXIT_USAGE

    def test_e2_needs_q0(self, capsys):
        assert main(["cohomology", "-d", "1", "--diff", "page1", "--ghost", "-1", "--tdeg", "2", "--e2"]) == EXIT_USAGE
        assert "--e2 applies to --diff q0 only" in capsys.readouterr().err

    def test_family_needs_q0(self):
        assert main(["cohomology", "-d", "1", "--diff", "q1", "--ghost", "0", "--tdeg", "4", "--family"]) == EXIT_USAGE

    def test_readme_lists_every_diff(self):
        with open(README, encoding="utf-8") as f:
            (usage,) = [line for line in f if line.startswith("* **`cohomology`**")]
        for choice in DIFF_CHOICES:
            assert f"`{choice}`" in usage or f"`--diff {choice}`" in usage, choice


def test_atomic_write_json(tmp_path):
    path = tmp_path / "out.json"
    atomic_write_json(str(path), {"b": 1, "a": [1, 2]})
    assert path.read_text() == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
