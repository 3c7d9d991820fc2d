"""
Command-line surface: ``python -m spinbfv {verify,cohomology,eval}``.

Exit codes: 0 all pass, 1 usage or config error, 2 evaluation error,
3 a check failed or was flagged.
"""
import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import replace
from typing import List, Optional, Sequence

from . import __version__
from .cohomology import CohomologyReport, window
from .config import RunConfig, checks_list, jobs_from_env, load_config
from .errors import ConfigError, DomainError, ParseError, SpinBFVError
from .model import DifferentialKind, Model, build_model
from .parser import eval_expr, parse_expr
from .report import CheckResult, Status
from .verify import run_suite

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EVAL = 2
EXIT_CHECKS = 3

DIFF_CHOICES = [k.value for k in DifferentialKind if k is not DifferentialKind.QTOTAL]


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_USAGE instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ============================
# Helpers
# ============================
def _resolve_config(ns: argparse.Namespace) -> RunConfig:
    cfg = load_config(ns.config) if ns.config else RunConfig()
    d = getattr(ns, "d", None)
    if d is not None and d != cfg.d:
        if cfg.b_field is not None:
            raise ConfigError(f"Config Error: -d {d} conflicts with the {cfg.d}x{cfg.d} b_field")
        cfg = replace(cfg, d=d)
    return cfg


def _model(cfg: RunConfig) -> Model:
    try:
        return build_model(cfg.d, cfg.b_field)
    except DomainError as e:
        raise ConfigError(f"Config Error: {e}") from e


def _jobs(ns: argparse.Namespace) -> int:
    if ns.jobs is not None:
        if ns.jobs < 1:
            raise ConfigError("--jobs must be positive")
        return ns.jobs
    return jobs_from_env()


def atomic_write_json(path: str, obj: object):
    """Write JSON next to path and move it into place in one step."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".spinbfv-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def build_report(cfg: RunConfig, results: Sequence[CheckResult]) -> dict:
    header = cfg.header()
    header["version"] = __version__
    return {"header": header, "results": [r.to_dict() for r in results]}


def exit_code_for(results: Sequence[CheckResult]) -> int:
    bad = {Status.FAIL, Status.FLAGGED}
    return EXIT_CHECKS if any(r.status in bad for r in results) else EXIT_OK


# ============================
# Commands
# ============================
def cmd_verify(ns: argparse.Namespace) -> int:
    cfg = _resolve_config(ns)
    if ns.seed is not None:
        cfg = replace(cfg, seed=ns.seed)
    if ns.checks:
        cfg = replace(cfg, checks=tuple(checks_list(ns.checks)))
    out_dir = os.path.dirname(os.path.abspath(ns.out)) if ns.out else None
    if out_dir and not os.path.isdir(out_dir):
        raise ConfigError(f"--out directory does not exist: {out_dir}")
    m = _model(cfg)
    results = run_suite(
        m, cfg.checks, cfg.bounds, seed=cfg.seed, samples=cfg.samples, gamma_min=cfg.gamma_min, jobs=_jobs(ns)
    )
    report = build_report(cfg, results)
    if ns.out:
        try:
            atomic_write_json(ns.out, report)
        except OSError as e:
            raise ConfigError(f"Cannot write report to {ns.out}: {e}") from e
        for r in results:
            line = f"{r.check_id:<24} {r.status.value}"
            print(line + (f"  {r.note}" if r.note else ""))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return exit_code_for(results)


def _format_row(row) -> str:
    parts = [
        f"ghost={row.bidegree.ghost}",
        f"T={row.bidegree.tdeg}",
        f"dim={row.dim}",
        f"rank_out={row.rank_out}",
        f"ker={row.dim_ker}",
        f"rank_in={row.rank_in}",
        f"betti={row.betti}",
    ]
    if row.family_rank is not None:
        parts.append(f"family_rank={row.family_rank}")
    if row.e2_betti is not None:
        parts.append(f"d1_rank={row.d1_rank} e2={row.e2_betti}")
    line = " ".join(parts)
    if row.family:
        line += "\n    " + ", ".join(row.family)
    return line


def cmd_cohomology(ns: argparse.Namespace) -> int:
    cfg = _resolve_config(ns)
    m = _model(cfg)
    gamma_min = cfg.gamma_min if ns.gamma_min is None else ns.gamma_min
    if ns.window:
        lo, hi = ns.window
        if lo > hi:
            raise ConfigError("--window needs G_LO <= G_HI")
        tmax = cfg.bounds.tmax if ns.tmax is None else ns.tmax
        ghosts, tdegs = range(lo, hi + 1), range(tmax + 1)
    else:
        if ns.ghost is None or ns.tdeg is None:
            raise ConfigError("cohomology needs --ghost and --tdeg, or --window")
        if ns.tdeg < 0:
            raise ConfigError("--tdeg must be nonnegative")
        ghosts, tdegs = [ns.ghost], [ns.tdeg]
    if ns.family and ns.diff != DifferentialKind.Q0.value:
        raise ConfigError("--family applies to --diff q0 only")
    if ns.e2 and ns.diff != DifferentialKind.Q0.value:
        raise ConfigError("--e2 applies to --diff q0 only")
    report: CohomologyReport = window(
        m, ns.diff, ghosts, tdegs, gamma_min=gamma_min, e2=ns.e2, with_family=ns.family, jobs=_jobs(ns)
    )
    if ns.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        for row in report.rows:
            print(_format_row(row))
    return EXIT_OK


def cmd_eval(ns: argparse.Namespace) -> int:
    cfg = _resolve_config(ns)
    ast = parse_expr(ns.expr, cfg.d)
    m = _model(cfg)
    rendering = eval_expr(m, ast)
    if ns.json:
        print(json.dumps({"text": rendering.text, "terms": rendering.terms}, indent=2, sort_keys=True))
    else:
        print(rendering.text)
    return EXIT_OK


# ============================
# Parser
# ============================
def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="spinbfv", description="Exact checks for the spinning-particle BFV complex")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p_verify = sub.add_parser("verify", help="Run the identity catalog")
    p_verify.add_argument("--config", help="JSON run configuration")
    p_verify.add_argument("--checks", help="Comma-separated check ids (default: config, else all)")
    p_verify.add_argument("--out", help="Write the JSON report here")
    p_verify.add_argument("--jobs", type=int, help="Worker processes (default: $SPINBFV_JOBS or 1)")
    p_verify.add_argument("--seed", type=int, help="Override the config seed")
    p_verify.set_defaults(func=cmd_verify)

    p_coh = sub.add_parser("cohomology", help="Betti numbers of a differential")
    p_coh.add_argument("--config", help="JSON run configuration")
    p_coh.add_argument("-d", type=int, help="Dimension (overrides config)")
    p_coh.add_argument("--diff", choices=DIFF_CHOICES, default=DifferentialKind.Q0.value)
    p_coh.add_argument("--ghost", type=int)
    p_coh.add_argument("--tdeg", type=int)
    p_coh.add_argument("--window", type=int, nargs=2, metavar=("G_LO", "G_HI"),
                       help="All ghosts in [G_LO, G_HI] and T <= tmax")
    p_coh.add_argument("--tmax", type=int, help="Override bounds.tmax for --window")
    p_coh.add_argument("--gamma-min", type=int, help="Lowest gamma exponent in the basis")
    p_coh.add_argument("--e2", action="store_true", help="Also compute d1 on E1 and the E2 Betti number")
    p_coh.add_argument("--family", action="store_true", help="Compare with the X_k/Y_k family span (q0)")
    p_coh.add_argument("--json", action="store_true")
    p_coh.add_argument("--jobs", type=int, help="Worker processes (default: $SPINBFV_JOBS or 1)")
    p_coh.set_defaults(func=cmd_cohomology)

    p_eval = sub.add_parser("eval", help="Evaluate an expression")
    p_eval.add_argument("--config", help="JSON run configuration")
    p_eval.add_argument("-d", type=int, help="Dimension (overrides config)")
    p_eval.add_argument("--json", action="store_true", help="Print the JSON term list too")
    p_eval.add_argument("expr")
    p_eval.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING, format=LOG_FORMAT, stream=sys.stderr)
    try:
        return ns.func(ns)
    except ConfigError as e:
        print(f"spinbfv: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"spinbfv: Parse Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SpinBFVError as e:
        print(f"spinbfv: Evaluation Error: {e}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    raise SystemExit(main())
