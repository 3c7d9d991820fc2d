"""Exact symbolic checks for the quantized BFV complex of the N=1 spinning particle."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    ConsistencyError,
    DomainError,
    ParseError,
    SpinBFVError,
    UnsupportedBackgroundError,
)
from .superalg import Element, GeneratorSpec, GeneratorTable, render  # noqa: E402
from .model import DifferentialKind, Model, apply_diff, build_model  # noqa: E402
from .report import CheckResult, Status  # noqa: E402
