import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from dotenv import load_dotenv

from .errors import ConfigError

JOBS_ENV = "SPINBFV_JOBS"

BField = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Bounds:
    kmax: int = 4
    fdeg_max: int = 2
    tmax: int = 8

    def as_dict(self) -> Dict[str, int]:
        return {"kmax": self.kmax, "fdeg_max": self.fdeg_max, "tmax": self.tmax}


@dataclass(frozen=True)
class RunConfig:
    d: int = 2
    b_field: Optional[BField] = None
    gamma_min: int = 0
    bounds: Bounds = field(default_factory=Bounds)
    seed: int = 0
    checks: Tuple[str, ...] = ()
    samples: int = 10

    def header(self) -> Dict[str, Any]:
        """Report header fields, with rationals as "num/den" strings."""
        b_field = None
        if self.b_field is not None:
            b_field = [[_format(q) for q in row] for row in self.b_field]
        return {"d": self.d, "seed": self.seed, "bounds": self.bounds.as_dict(), "b_field": b_field}


def _format(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(value: Any) -> Fraction:
    """Accepts "num/den" strings and integers; floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigError(f"Rational must be an integer or a 'num/den' string, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"Not a rational: {value!r}")


def _int(raw: Mapping[str, Any], key: str, default: int, least: Optional[int] = None) -> int:
    value = raw.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{key}' must be an integer, got {value!r}")
    if least is not None and value < least:
        raise ConfigError(f"'{key}' must be >= {least}, got {value}")
    return value


def _b_field(value: Any) -> Optional[BField]:
    if value is None:
        return None
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise ConfigError("'b_field' must be an array of arrays")
    return tuple(tuple(parse_rational(q) for q in row) for row in value)


def config_from_dict(raw: Mapping[str, Any]) -> RunConfig:
    if not isinstance(raw, Mapping):
        raise ConfigError("Config must be a JSON object")
    known = {"d", "b_field", "gamma_min", "bounds", "seed", "checks", "samples"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")

    bounds_raw = raw.get("bounds", {})
    if not isinstance(bounds_raw, Mapping):
        raise ConfigError("'bounds' must be an object")
    extra = sorted(set(bounds_raw) - {"kmax", "fdeg_max", "tmax"})
    if extra:
        raise ConfigError(f"Unknown bounds keys: {', '.join(extra)}")
    defaults = Bounds()
    bounds = Bounds(
        kmax=_int(bounds_raw, "kmax", defaults.kmax, 0),
        fdeg_max=_int(bounds_raw, "fdeg_max", defaults.fdeg_max, 0),
        tmax=_int(bounds_raw, "tmax", defaults.tmax, 0),
    )

    checks = raw.get("checks", [])
    if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
        raise ConfigError("'checks' must be an array of strings")

    b_field = _b_field(raw.get("b_field"))
    d = _int(raw, "d", 2, 1)
    if b_field is not None and (len(b_field) != d or any(len(row) != d for row in b_field)):
        raise ConfigError(f"'b_field' must be a {d}x{d} matrix")
    return RunConfig(
        d=d,
        b_field=b_field,
        gamma_min=_int(raw, "gamma_min", 0),
        bounds=bounds,
        seed=_int(raw, "seed", 0),
        checks=tuple(checks),
        samples=_int(raw, "samples", 10, 0),
    )


def load_config(path: str) -> RunConfig:
    """Read a RunConfig from a JSON file."""
    # 1. Validate file existence
    if not os.path.exists(path):
        raise ConfigError(f"Config Error: file not found: {path}")
    # 2. Parse and validate
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config Error: invalid JSON in {path}: {e}") from e
    try:
        return config_from_dict(raw)
    except ConfigError as e:
        raise ConfigError(f"Config Error: {e}") from e


def jobs_from_env(default: int = 1) -> int:
    """Worker count from SPINBFV_JOBS (after reading .env), else default."""
    load_dotenv()
    value = os.getenv(JOBS_ENV)
    if value is None or not value.strip():
        return default
    try:
        jobs = int(value)
    except ValueError:
        raise ConfigError(f"{JOBS_ENV} must be a positive integer, got {value!r}")
    if jobs < 1:
        raise ConfigError(f"{JOBS_ENV} must be a positive integer, got {value!r}")
    return jobs


def checks_list(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [c.strip() for c in text.split(",") if c.strip()]
