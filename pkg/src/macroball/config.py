"""Configuration loading, defaults, and the reproducibility digest.

One declarative TOML file, merged over built-in defaults; the effective
configuration is hashed into every report so a report can be traced back
to the exact settings that produced it.  Default search order:
--config PATH, then $MACROBALL_CONFIG, then ./macroball.toml if present.
"""

from __future__ import annotations

import hashlib
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .constants import ExternalConstants, croke_cprime_formula
from .errors import ConfigError
from .numerics import Tolerance
from .serialize import json_dumps

ENV_VAR = "MACROBALL_CONFIG"
DEFAULT_PATH = "macroball.toml"

# Stated tolerance of each verification criterion.  Overridable from the
# [criteria_tolerances] section; tightening one past what the numerics can
# deliver reports a failure rather than crashing.
DEFAULT_CRITERIA_TOLERANCES = {
    "closed_form_volume_oracles": 1e-10,
    "f_large_r_limit": 2e-3,
    "f_small_r_law": 1e-3,
    "chain_halfball_inequality": 0.0,
    "two_lambda_bound": 1e-9,
    "fd_derivative_certification": 0.05,
    "c_n_floor": 1e-9,
    "lambda_n_law": 1e-2,
    "pipeline_identities": 1e-12,
    "ideal_simplex_values": 1e-5,
    "surface_consistency": 1e-12,
    "optimizer_oracle_equivalence": 1e-6,
}


def _default_dict() -> dict:
    return {
        "tolerances": {
            "quadrature": {"rel": 1e-10, "abs": 1e-12, "max_depth": 60},
            "extremal": 1e-8,
        },
        "external_constants": {
            # Croke's Proposition 14 constant [Cr80]:
            #   vol B(r) >= c'_n r^n for r below half the injectivity radius,
            #   c'_n = 2^(n-1) s_{n-1}^n / (n^n s_n^(n-1)),  s_k = Vol(S^k).
            "croke_cprime": {str(n): croke_cprime_formula(n) for n in range(2, 9)},
            # Maximal ideal simplex volumes for n >= 4 are literature values
            # the pipeline refuses to invent; none are shipped by default.
            "ideal_simplex_vol_override": {},
        },
        "grid": {
            "dims": [2, 3, 4],
            "lambda_values": [0.5, 1.0, 2.0, 5.0, 10.0],
            "r_values": [0.5, 1.0, 2.0, 4.0, 8.0],
        },
        "max_ray_cut": 1e4,
        "output": {"format": "json", "path": "-"},
        "criteria_tolerances": dict(DEFAULT_CRITERIA_TOLERANCES),
    }


def _merge(base: dict, override: dict, path: str = "") -> dict:
    out = dict(base)
    for key, val in override.items():
        where = f"{path}.{key}" if path else key
        if key in out and isinstance(out[key], dict):
            if not isinstance(val, dict):
                raise ConfigError(f"{where}: expected a table")
            out[key] = _merge(out[key], val, where)
        else:
            out[key] = val
    return out


def _int_keyed(table: dict, where: str) -> dict[int, float]:
    out = {}
    for k, v in table.items():
        try:
            n = int(k)
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: key {k!r} is not an integer dimension") from None
        out[n] = float(v)
    return out


@dataclass(frozen=True)
class Config:
    quad_tol: Tolerance
    extremal_tol: float
    externals: ExternalConstants
    dims: tuple[int, ...]
    lambda_values: tuple[float, ...]
    r_values: tuple[float, ...]
    max_ray_cut: float
    output_format: str
    output_path: str
    criteria_tolerances: dict[str, float]
    effective: dict
    digest: str


def load_config(path: Optional[str] = None) -> Config:
    """Load and validate the effective configuration.

    Raises ConfigError on unreadable files, malformed TOML, or invariant
    violations (non-positive grid entries, dims below 2, quadrature
    tolerances outside their legal range).
    """
    raw: dict[str, Any] = {}
    chosen = path or os.environ.get(ENV_VAR)
    if chosen is None and Path(DEFAULT_PATH).is_file():
        chosen = DEFAULT_PATH
    if chosen is not None:
        try:
            with open(chosen, "rb") as fh:
                raw = tomllib.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {chosen}") from None
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"malformed TOML in {chosen}: {exc}") from None

    eff = _merge(_default_dict(), raw)

    quad = eff["tolerances"]["quadrature"]
    try:
        quad_tol = Tolerance(rel=float(quad["rel"]), abs=float(quad["abs"]),
                             max_depth=int(quad["max_depth"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"tolerances.quadrature: {exc}") from None
    extremal_tol = float(eff["tolerances"]["extremal"])
    if not extremal_tol > 0.0:
        raise ConfigError("tolerances.extremal must be > 0")

    ext_raw = eff["external_constants"]
    try:
        externals = ExternalConstants(
            croke_cprime=_int_keyed(ext_raw["croke_cprime"], "external_constants.croke_cprime"),
            ideal_simplex_vol_override=_int_keyed(
                ext_raw["ideal_simplex_vol_override"],
                "external_constants.ideal_simplex_vol_override"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    grid = eff["grid"]
    dims = tuple(int(d) for d in grid["dims"])
    lams = tuple(float(x) for x in grid["lambda_values"])
    rs = tuple(float(x) for x in grid["r_values"])
    if not dims or not lams or not rs:
        raise ConfigError("grid lists must be non-empty")
    if any(d < 2 for d in dims):
        raise ConfigError("grid.dims entries must be >= 2")
    if any(x <= 0 for x in lams) or any(x <= 0 for x in rs):
        raise ConfigError("grid.lambda_values and grid.r_values must be > 0")

    max_ray_cut = float(eff["max_ray_cut"])
    if not max_ray_cut > 0:
        raise ConfigError("max_ray_cut must be > 0")

    out = eff["output"]
    fmt = str(out["format"])
    if fmt not in ("json", "csv"):
        raise ConfigError(f"output.format must be json or csv, got {fmt!r}")

    crit = {k: float(v) for k, v in eff["criteria_tolerances"].items()}
    unknown = set(crit) - set(DEFAULT_CRITERIA_TOLERANCES)
    if unknown:
        raise ConfigError(f"unknown criteria_tolerances keys: {sorted(unknown)}")

    digest = hashlib.sha256(json_dumps(eff).encode("utf-8")).hexdigest()
    return Config(
        quad_tol=quad_tol,
        extremal_tol=extremal_tol,
        externals=externals,
        dims=dims,
        lambda_values=lams,
        r_values=rs,
        max_ray_cut=max_ray_cut,
        output_format=fmt,
        output_path=str(out["path"]),
        criteria_tolerances=crit,
        effective=eff,
        digest=digest,
    )
