"""Run configuration for the command-line interface.

Example::

    {
      "inner": {"type": "blaschke", "zeros": [{"re": 0.5, "im": 0.0}]},
      "truncation": {"N": "auto", "tail_tol": 1e-24},
      "diagnostics": {"n_max": "auto", "tol": 1e-6},
      "seed": 0
    }

Only ``inner`` is required.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .inner import InnerFunctionSpec, spec_from_json
from .model_space import DEFAULT_TAIL_TOL, auto_truncation


class ParseError(ConfigError):
    pass


@dataclass(frozen=True)
class RunConfig:
    inner: InnerFunctionSpec
    N: int
    tail_tol: float = DEFAULT_TAIL_TOL
    n_max: int | None = None
    tol: float = 1e-6
    seed: int = 0
    truncation_note: str | None = None

    def resolve_n_max(self, d: int) -> int:
        return 4 * d if self.n_max is None else self.n_max


def _positive_float(value, where):
    try:
        x = float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: expected a number, got {value!r}") from exc
    if not x > 0:
        raise ConfigError(f"{where}: must be > 0, got {value!r}")
    return x


def _int_or_auto(value, where, minimum):
    if value is None or value == "auto":
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer or \"auto\", got {value!r}")
    if value < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}, got {value}")
    return value


def config_from_dict(obj: dict) -> RunConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config: expected a JSON object")
    if "inner" not in obj:
        raise ConfigError("config: missing required field 'inner'")
    inner = spec_from_json(obj["inner"], "inner")
    trunc = obj.get("truncation", {}) or {}
    diag = obj.get("diagnostics", {}) or {}
    tail_tol = _positive_float(trunc.get("tail_tol", DEFAULT_TAIL_TOL), "truncation.tail_tol")
    n = _int_or_auto(trunc.get("N", "auto"), "truncation.N", 2)
    note = None
    if n is None:
        choice = auto_truncation(inner, tail_tol)
        n, note = choice.n, choice.message
    seed = obj.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"seed: expected a non-negative integer, got {seed!r}")
    return RunConfig(
        inner=inner,
        N=n,
        tail_tol=tail_tol,
        n_max=_int_or_auto(diag.get("n_max", "auto"), "diagnostics.n_max", 1),
        tol=_positive_float(diag.get("tol", 1e-6), "diagnostics.tol"),
        seed=seed,
        truncation_note=note,
    )


def parse_config(path) -> RunConfig:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return config_from_dict(obj)
