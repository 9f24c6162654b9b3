"""Run configuration: CLI flag > NPF_* environment variable > config file > default."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Mapping

from .factor import FactorBudget

OUTPUT_FORMATS = ("csv", "json", "markdown")


class ConfigError(ValueError):
    pass


def _default_cache() -> str:
    base = os.environ.get("XDG_CACHE_HOME") or str(Path.home() / ".cache")
    return str(Path(base) / "npf")


@dataclass(frozen=True)
class RunConfig:
    cache_dir: str = ""
    factor_budget_seconds: float = 10.0
    trial_bound: int = 10**6
    precision_ceiling: int = 20001
    output_format: str = "csv"
    threads: int | None = 1  # None means one worker per CPU

    def __post_init__(self):
        if not self.cache_dir:
            object.__setattr__(self, "cache_dir", _default_cache())
        if self.factor_budget_seconds <= 0:
            raise ConfigError("factor_budget_seconds must be positive")
        if self.trial_bound < 2:
            raise ConfigError("trial_bound must be at least 2")
        if self.precision_ceiling < 2:
            raise ConfigError("precision_ceiling must be at least 2")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be positive or 'auto'")

    @property
    def budget(self) -> FactorBudget:
        return FactorBudget(trial_bound=self.trial_bound, seconds=self.factor_budget_seconds)

    @property
    def workers(self) -> int:
        return self.threads or os.cpu_count() or 1


_KEYS = {f.name: f for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    raw = raw.strip()
    if key == "threads":
        return None if raw == "auto" else int(raw)
    if key in ("trial_bound", "precision_ceiling"):
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    if key == "factor_budget_seconds":
        return float(raw)
    return raw


def parse_config_text(text: str, origin: str = "config") -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"{origin}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _coerce(key, raw)
        except ValueError:
            raise ConfigError(f"{origin}:{lineno}: bad value {raw!r} for {key}") from None
    return out


def from_env(environ: Mapping[str, str]) -> dict:
    out = {}
    for key in _KEYS:
        raw = environ.get("NPF_" + key.upper())
        if raw is not None:
            try:
                out[key] = _coerce(key, raw)
            except ValueError:
                raise ConfigError(f"NPF_{key.upper()}: bad value {raw!r}") from None
    return out


def load_config(config_file: str | None = None, environ: Mapping[str, str] | None = None,
                overrides: Mapping[str, object] | None = None) -> RunConfig:
    environ = os.environ if environ is None else environ
    values: dict = {}
    path = config_file or environ.get("NPF_CONFIG")
    if path:
        values.update(parse_config_text(Path(path).read_text(encoding="utf-8"), str(path)))
    values.update(from_env(environ))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return replace(RunConfig(), **values)
