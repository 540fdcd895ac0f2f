"""Command-line front end.

Subcommands: `constants` (resolved constants chain for one dimension),
`curve` (CSV samples of the named radial functions), `kernel-check`
(inequality chain plus finite-difference certification at one parameter
triple), `verify` (the full check suite).

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 numeric degeneracy.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional

import numpy as np

from . import constants as cn
from .checks import SUITES, outcome_to_dict, run_checks
from .config import Config, load_config
from .errors import (
    ConfigError,
    DegenerateKernelError,
    DepthExceededError,
    MacroballError,
    MissingExternalError,
    MissingInputError,
    NonFiniteError,
    UnsupportedDimError,
    VolumeOverflowError,
)
from .hypgeom import v_hyp
from .kernel import KernelParams, chain_check, fd_derivative_check
from .serialize import csv_lines, json_dumps

_USAGE_ERRORS = (ConfigError, MissingExternalError, MissingInputError, ValueError)
_NUMERIC_ERRORS = (DegenerateKernelError, NonFiniteError, DepthExceededError,
                   VolumeOverflowError, OverflowError)


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def constants_report_dict(rep: cn.ConstantsReport, config_digest: str) -> dict:
    return {
        "dim": rep.n,
        "V_n": rep.V_n,
        "f_sup": {
            "value": rep.f_sup.value,
            "arg": rep.f_sup.arg,
            "at_infinity": rep.f_sup.at_infinity,
        },
        "C_n": rep.C_n,
        "alpha_n": rep.alpha_n,
        "c_n": rep.c_n.value,
        "c_prime_n": rep.c_prime_n,
        "c_triple_prime_n": rep.c_triple_prime_n,
        "lambda_n": rep.lambda_n,
        "lambda_clamped": rep.lambda_clamped,
        "beta_n": rep.beta_n,
        "entropy_threshold_ratio": rep.entropy_threshold_ratio,
        "isoembolic_coefficient": rep.isoembolic_coefficient,
        "provenance": rep.provenance,
        "config_digest": config_digest,
    }


def _cmd_constants(args) -> int:
    cfg = load_config(args.config)
    rep = cn.compute_beta_n(args.dim, cfg.externals, cfg.extremal_tol,
                            max_ray_cut=cfg.max_ray_cut)
    _write(args.out, json_dumps(constants_report_dict(rep, cfg.digest)))
    return 0


def _curve_function(which: str, dim: int, cfg: Config):
    if which == "v_hyp":
        return lambda r: v_hyp(dim, r, cfg.quad_tol)
    if which == "f":
        return lambda r: cn.f_of_R(dim, r, cfg.quad_tol)
    if which == "g":
        return cn.g_gauge(dim)
    if which == "lambda_integrand":
        c_res = cn.compute_c_n(dim, cfg.extremal_tol, max_ray_cut=cfg.max_ray_cut)
        try:
            c_prime = cfg.externals.croke_cprime[dim]
        except KeyError:
            raise MissingExternalError(f"croke_cprime[{dim}]") from None
        c3 = c_res.value * c_prime * 2.0 ** -dim
        return cn.lambda_gauge(dim, c3)
    raise ValueError(f"unknown curve {which!r}")


def _cmd_curve(args) -> int:
    cfg = load_config(args.config)
    if not (0.0 < args.r_min < args.r_max):
        raise ValueError(f"need 0 < r_min < r_max, got {args.r_min}, {args.r_max}")
    if args.samples < 2:
        raise ValueError("samples must be >= 2")
    fn = _curve_function(args.which, args.dim, cfg)
    radii = np.geomspace(args.r_min, args.r_max, args.samples)
    rows = [(float(r), fn(float(r))) for r in radii]
    _write(args.out, csv_lines(("R", "value"), rows))
    return 0


def _cmd_kernel_check(args) -> int:
    cfg = load_config(args.config)
    p = KernelParams(args.dim, args.lam, args.r)
    report = chain_check(p, cfg.quad_tol)
    if not all(math.isfinite(x) for x in (report.I, report.ball_vol, report.mass)):
        raise VolumeOverflowError(
            "chain values exceed the float range at these parameters; "
            "reduce lambda*R"
        )
    # The denominator-positivity entry is a recorded condition gating the
    # surrogate bound, not an asserted inequality: false means the surrogate
    # does not apply at this point, which is not a verification failure.
    conditions = {"halfball_surrogate_denominator_positive"}
    checks = []
    for entry in report.chain_inequalities:
        if entry.holds:
            status = "pass"
        elif entry.name in conditions:
            status = "skipped"
        else:
            status = "fail"
        checks.append({
            "id": entry.name,
            "description": f"chain inequality at (n={p.n}, lambda={p.lam}, R={p.R})",
            "statement": f"lhs {entry.relation} rhs",
            "status": status,
            "lhs": entry.lhs,
            "rhs": entry.rhs,
            "margin": (entry.lhs - entry.rhs) if entry.relation == ">="
                      else (entry.rhs - entry.lhs),
        })
    if p.n in (2, 3):
        fd = fd_derivative_check(p, args.fd_step, cfg.quad_tol)
        checks.append({
            "id": "fd_derivative_check",
            "description": f"finite-difference TV rate at step {args.fd_step}",
            "statement": "tv(h)/h <= deriv_bound (1 + 0.05) + quadrature tolerance",
            "status": "pass" if fd.holds else "fail",
            "lhs": fd.fd_norm_rate,
            "rhs": fd.bound,
            "margin": fd.bound * 1.05 - fd.fd_norm_rate,
        })
    else:
        checks.append({
            "id": "fd_derivative_check",
            "description": "finite-difference TV rate",
            "statement": "skipped: UnsupportedDim (TV integration covers n in {2,3})",
            "status": "skipped",
            "lhs": 0.0,
            "rhs": 0.0,
            "margin": 0.0,
        })
    failed = sum(1 for c in checks if c["status"] == "fail")
    doc = {
        "suite": "kernel-check",
        "params": {"dim": p.n, "lambda": p.lam, "R": p.R},
        "derived": {
            "I": report.I,
            "ball_vol": report.ball_vol,
            "mass": report.mass,
            "deriv_bound": report.deriv_bound,
            "lambda_min": report.lambda_min,
            "two_lambda_ok": report.two_lambda_ok,
        },
        "checks": checks,
        "summary": {
            "pass": sum(1 for c in checks if c["status"] == "pass"),
            "fail": failed,
            "skipped": sum(1 for c in checks if c["status"] == "skipped"),
        },
        "config_digest": cfg.digest,
    }
    _write(args.out, json_dumps(doc))
    return 1 if failed else 0


def _human_table(outcome) -> str:
    width = max(len(c.id) for c in outcome.checks) if outcome.checks else 4
    lines = [f"{'check':<{width}}  status  margin"]
    for c in outcome.checks:
        lines.append(f"{c.id:<{width}}  {c.status:<6}  {c.margin:.3e}")
    counts = outcome.counts
    lines.append(f"{counts['pass']} passed, {counts['fail']} failed, "
                 f"{counts['skipped']} skipped")
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> int:
    cfg = load_config(args.config)
    outcome = run_checks(cfg, suite=args.suite, workers=args.workers)
    _write(args.out, json_dumps(outcome_to_dict(outcome, cfg.digest)))
    table_stream = sys.stderr if args.out == "-" else sys.stdout
    table_stream.write(_human_table(outcome))
    return 0 if outcome.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macroball",
        description=("Hyperbolic ball-volume numerics, smoothing-kernel bounds "
                     "and the dimensional constants pipeline."),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="resolved constants chain for one dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(fn=_cmd_constants)

    p = sub.add_parser("curve", help="CSV samples of a radial function")
    p.add_argument("--which", choices=("f", "g", "lambda_integrand", "v_hyp"),
                   required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv",), default="csv")
    p.set_defaults(fn=_cmd_curve)

    p = sub.add_parser("kernel-check",
                       help="inequality chain and finite-difference check at one triple")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--r", "--R", dest="r", type=float, required=True)
    p.add_argument("--fd-step", type=float, default=1e-3)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(fn=_cmd_kernel_check)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERIC_ERRORS as exc:
        print(f"numeric degeneracy: {exc}", file=sys.stderr)
        return 3
    except UnsupportedDimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MacroballError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
