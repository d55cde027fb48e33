"""Settings management for worker count and dedup spill bound."""

import json
import logging
import os
from pathlib import Path
from typing import Any

from mhclab.config import (
    CONFIG_DIR_ENV,
    DEFAULT_SPILL_BOUND,
    DEFAULT_WORKERS,
    SPILL_BOUND_ENV,
    WORKERS_ENV,
)

logger = logging.getLogger(__name__)

SETTING_KEYS = ("workers", "spill_bound")


def config_dir() -> Path:
    """Directory holding config.json (``MHCLAB_CONFIG_DIR`` overrides ~/.mhclab)."""
    override = os.environ.get(CONFIG_DIR_ENV)
    if override:
        return Path(override)
    return Path.home() / ".mhclab"


def config_file() -> Path:
    return config_dir() / "config.json"


def _ensure_config_dir() -> None:
    """Ensure the config directory exists."""
    config_dir().mkdir(parents=True, exist_ok=True)


def _load_config() -> dict:
    """Load configuration from file."""
    path = config_file()
    if not path.exists():
        return {}
    try:
        data = json.loads(path.read_text())
    except (json.JSONDecodeError, OSError):
        return {}
    return data if isinstance(data, dict) else {}


def _save_config(config: dict) -> None:
    """Save configuration to file."""
    _ensure_config_dir()
    config_file().write_text(json.dumps(config, indent=2))


def _positive_int(value: Any, source: str) -> int | None:
    try:
        number = int(value)
    except (TypeError, ValueError):
        logger.warning("Ignoring non-integer %s value %r", source, value)
        return None
    if number < 1:
        logger.warning("Ignoring non-positive %s value %r", source, value)
        return None
    return number


def _resolve(explicit: int | None, env_name: str, key: str, default: int) -> int:
    if explicit is not None:
        checked = _positive_int(explicit, "flag")
        if checked is not None:
            return checked
    env_value = os.environ.get(env_name)
    if env_value:
        checked = _positive_int(env_value, env_name)
        if checked is not None:
            return checked
    stored = _load_config().get(key)
    if stored is not None:
        checked = _positive_int(stored, f"config key '{key}'")
        if checked is not None:
            return checked
    return default


def get_worker_count(explicit: int | None = None) -> int:
    """Worker count: flag > MHCLAB_WORKERS > config file > default."""
    return _resolve(explicit, WORKERS_ENV, "workers", DEFAULT_WORKERS)


def get_spill_bound(explicit: int | None = None) -> int:
    """In-memory canonical-form bound before the dedup set spills to disk."""
    return _resolve(explicit, SPILL_BOUND_ENV, "spill_bound", DEFAULT_SPILL_BOUND)


def set_setting(key: str, value: int) -> None:
    """Store a setting."""
    config = _load_config()
    config[key] = value
    _save_config(config)


def clear_setting(key: str) -> None:
    """Remove a stored setting."""
    config = _load_config()
    config.pop(key, None)
    _save_config(config)


def stored_settings() -> dict[str, Any]:
    """The known keys currently in config.json."""
    config = _load_config()
    return {key: config[key] for key in SETTING_KEYS if key in config}
