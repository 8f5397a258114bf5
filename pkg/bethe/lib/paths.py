import os
from pathlib import Path

CONFIG_ENV = "BETHE_CONFIG"


def dot_bethe() -> Path:
    return Path.home() / ".bethe"


def default_config() -> Path:
    return dot_bethe() / "config.yaml"


def factors_dir() -> Path:
    return dot_bethe() / "factors"


def config_path(explicit: str | None = None) -> Path | None:
    """Explicit path, then $BETHE_CONFIG, then ~/.bethe/config.yaml when present."""
    if explicit:
        return Path(explicit).expanduser()
    env = os.environ.get(CONFIG_ENV)
    if env:
        return Path(env).expanduser()
    fallback = default_config()
    return fallback if fallback.exists() else None


def factor_path(ref: str) -> Path:
    """Resolve a factor file reference; bare names fall back to ~/.bethe/factors/<name>."""
    path = Path(ref).expanduser()
    if path.exists() or path.is_absolute() or path.parent != Path("."):
        return path
    return factors_dir() / ref
