import json
from fractions import Fraction

import pytest

from spinbfv.config import (
    JOBS_ENV,
    Bounds,
    RunConfig,
    checks_list,
    config_from_dict,
    jobs_from_env,
    load_config,
    parse_rational,
)
from spinbfv.errors import ConfigError


def write(tmp_path, obj):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return str(path)


class TestRationals:
    def test_strings_and_ints(self):
        assert parse_rational("3/2") == Fraction(3, 2)
        assert parse_rational(-4) == -4
        assert parse_rational("-1/3") == Fraction(-1, 3)

    @pytest.mark.parametrize("value", [0.5, True, "x", "1/0", None])
    def test_rejected(self, value):
        with pytest.raises(ConfigError):
            parse_rational(value)


class TestConfigFromDict:
    def test_defaults(self):
        cfg = config_from_dict({})
        assert cfg == RunConfig()
        assert cfg.bounds == Bounds(kmax=4, fdeg_max=2, tmax=8)

    def test_full(self):
        cfg = config_from_dict({
            "d": 2,
            "b_field": [[0, "1/2"], ["-1/2", 0]],
            "bounds": {"kmax": 3, "tmax": 6},
            "seed": 11,
            "checks": ["mc_poisson"],
            "samples": 4,
        })
        assert cfg.b_field == ((0, Fraction(1, 2)), (Fraction(-1, 2), 0))
        assert cfg.bounds == Bounds(kmax=3, fdeg_max=2, tmax=6)
        assert cfg.checks == ("mc_poisson",)
        assert cfg.header() == {
            "d": 2,
            "seed": 11,
            "bounds": {"kmax": 3, "fdeg_max": 2, "tmax": 6},
            "b_field": [["0/1", "1/2"], ["-1/2", "0/1"]],
        }

    @pytest.mark.parametrize(
        "raw,match",
        [
            ({"dimension": 2}, "Unknown config keys"),
            ({"bounds": {"kmin": 1}}, "Unknown bounds keys"),
            ({"d": 0}, "'d' must be >= 1"),
            ({"d": 2.0}, "'d' must be an integer"),
            ({"seed": True}, "'seed' must be an integer"),
            ({"b_field": [[0, 0.5], [-0.5, 0]]}, "Rational"),
            ({"b_field": [[0]]}, "2x2"),
            ({"checks": "mc_poisson"}, "'checks'"),
            ({"bounds": {"tmax": -1}}, "'tmax' must be >= 0"),
        ],
    )
    def test_rejected(self, raw, match):
        with pytest.raises(ConfigError, match=match):
            config_from_dict(raw)


class TestLoadConfig:
    def test_round_trip(self, tmp_path):
        path = write(tmp_path, {"d": 1, "seed": 5})
        cfg = load_config(path)
        assert (cfg.d, cfg.seed) == (1, 5)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="file not found"):
            load_config(str(tmp_path / "absent.json"))

    def test_invalid_json(self, tmp_path):
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_config(write(tmp_path, "{not json"))

    def test_errors_are_prefixed(self, tmp_path):
        with pytest.raises(ConfigError, match="^Config Error: "):
            load_config(write(tmp_path, {"d": "two"}))


class TestJobs:
    def test_default(self, monkeypatch):
        monkeypatch.setenv(JOBS_ENV, "")
        assert jobs_from_env() == 1
        assert jobs_from_env(default=3) == 3

    def test_from_environment(self, monkeypatch):
        monkeypatch.setenv(JOBS_ENV, "4")
        assert jobs_from_env() == 4

    @pytest.mark.parametrize("value", ["0", "-2", "many"])
    def test_rejected(self, monkeypatch, value):
        monkeypatch.setenv(JOBS_ENV, value)
        with pytest.raises(ConfigError):
            jobs_from_env()


def test_checks_list():
    assert checks_list(" mc_poisson, ,q1_xi ") == ["mc_poisson", "q1_xi"]
    assert checks_list(None) == []
