"""Flat ``key = value`` configuration files.

Keys use the parameter names (epsilon, j, eta3, eta4, eta5, t0,
beta4_mode) plus optimizer keys (budget, seed, epsilon_min, ...).  The
path comes from ``--config`` or the ``ZETALINE_CONFIG`` environment
variable.  Precedence: command-line flag > config file > default.
"""

from __future__ import annotations

import configparser
import os

from .exp_sums import Beta4Mode, EtaVector
from .pipeline import REFERENCE_PARAMS, PipelineParams

ENV_VAR = "ZETALINE_CONFIG"
PARAM_KEYS = ("epsilon", "j", "eta3", "eta4", "eta5", "t0", "beta4_mode")
SEARCH_KEYS = (
    "budget", "seed", "grid_points",
    "epsilon_min", "epsilon_max", "j_values",
    "eta3_min", "eta3_max", "eta4_min", "eta4_max", "eta5_min", "eta5_max",
    "t0_min", "t0_max",
)


class ConfigError(ValueError):
    pass


def read_config(path: str | None = None) -> dict[str, str]:
    """Raw key/value strings from the config file, or {} if none is given."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return {}
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    with open(path) as fh:
        cp.read_string("[zetaline]\n" + fh.read())
    values = dict(cp["zetaline"])
    unknown = set(values) - set(PARAM_KEYS) - set(SEARCH_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return values


def _convert(key: str, raw):
    if raw is None:
        return None
    try:
        if key in ("j", "budget", "seed", "grid_points"):
            return int(float(raw))
        if key == "beta4_mode":
            return Beta4Mode(raw)
        if key == "j_values":
            return tuple(int(v) for v in str(raw).replace(",", " ").split())
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def merged(file_values: dict, overrides: dict, keys) -> dict:
    """Typed values for ``keys`` with CLI overrides winning over the file."""
    out = {}
    for k in keys:
        v = overrides.get(k)
        if v is None:
            v = file_values.get(k)
        out[k] = _convert(k, v)
    return out


def build_params(file_values: dict | None = None, overrides: dict | None = None,
                 base: PipelineParams = REFERENCE_PARAMS) -> PipelineParams:
    v = merged(file_values or {}, overrides or {}, PARAM_KEYS)
    eta = EtaVector(
        v["eta3"] if v["eta3"] is not None else base.eta.eta3,
        v["eta4"] if v["eta4"] is not None else base.eta.eta4,
        v["eta5"] if v["eta5"] is not None else base.eta.eta5,
    )
    return PipelineParams(
        epsilon=v["epsilon"] if v["epsilon"] is not None else base.epsilon,
        j=v["j"] if v["j"] is not None else base.j,
        eta=eta,
        t0=v["t0"] if v["t0"] is not None else base.t0,
        beta4_mode=v["beta4_mode"] if v["beta4_mode"] is not None else base.beta4_mode,
    )
