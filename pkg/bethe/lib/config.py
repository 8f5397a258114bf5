"""Flat YAML run configuration. Flags override file values."""

import logging
from pathlib import Path

import yaml

from bethe.core.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_KEYS = {
    "regular": list,
    "poisson": list,
    "var_degrees": str,
    "check_degrees": str,
    "factor": str,
    "q": int,
    "field": list,
    "grid": int,
    "tol": float,
    "max_iters": int,
    "damping": float,
    "restarts": int,
    "seed": int,
    "threads": int,
    "pop": int,
    "sweeps": int,
    "samples": int,
    "table_cap": int,
    "enum_budget": int,
    "bits": bool,
    "output": str,
}


def _coerce(key: str, value):
    kind = CONFIG_KEYS[key]
    if kind is list:
        if isinstance(value, str):
            value = value.replace(",", " ").split()
        if not isinstance(value, list) or any(isinstance(v, dict | list) for v in value):
            raise ConfigError(f"config key '{key}' must be a flat list, got {value!r}")
        return value
    if isinstance(value, dict | list):
        raise ConfigError(f"config key '{key}' must be a scalar, got {value!r}")
    if kind is bool and isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    try:
        return kind(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"config key '{key}' expects {kind.__name__}, got {value!r}") from e


def load_config(path: Path | None) -> dict:
    if path is None:
        return {}
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        raise ConfigError(f"config file {path} is not valid YAML: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a key-value mapping")
    out = {}
    for raw_key, value in data.items():
        key = str(raw_key).replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key '{raw_key}' in {path}")
        out[key] = _coerce(key, value)
    logger.debug(f"Loaded {len(out)} config keys from {path}")
    return out


def merge(file_values: dict, flags: dict) -> dict:
    """Flags that were given (not None) win over file values."""
    merged = dict(file_values)
    merged.update({k: v for k, v in flags.items() if v is not None})
    return merged
