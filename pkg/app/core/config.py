"""
Configuration for pisquared: a nested YAML (or JSON) file mapped onto a
flat Settings model via Pydantic v2 alias paths, with a few ENV overrides.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import yaml
from pydantic import AliasPath, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
CONFIG_ENV_VAR = "PISQUARED_CONFIG_FILE"
DEFAULT_CONFIG = Path("config") / "pisquared-config.yaml"


# --------------------------------------------------------------------------- #
# Settings
# --------------------------------------------------------------------------- #
class Settings(BaseSettings):
    """
    Every required field comes from the file; only cosmetic CLI switches
    have in-code defaults.
    """

    model_config = ConfigDict(
        env_file=".env",
        case_sensitive=False,
        extra="allow",
    )

    # ---- app ----
    app_name: str = Field(..., validation_alias=AliasPath("app", "name"))
    app_version: str = Field(..., validation_alias=AliasPath("app", "version"))
    debug: bool = Field(..., validation_alias=AliasPath("app", "debug"))

    # ---- logging ----
    log_level: str = Field(..., validation_alias=AliasPath("logging", "level"))
    log_format: str = Field(..., validation_alias=AliasPath("logging", "format"))

    # ---- verify: exact suite ----
    verify_order: int = Field(..., ge=4, validation_alias=AliasPath("verify", "order"))
    seed: int = Field(..., validation_alias=AliasPath("verify", "seed"))
    max_denominator: int = Field(..., ge=1, validation_alias=AliasPath("verify", "max_denominator"))
    gauss_samples: int = Field(..., ge=0, validation_alias=AliasPath("verify", "gauss_samples"))
    whipple_samples: int = Field(..., ge=0, validation_alias=AliasPath("verify", "whipple_samples"))
    theorem1_samples: int = Field(..., ge=0, validation_alias=AliasPath("verify", "theorem1_samples"))
    saalschutz_samples: int = Field(..., ge=0, validation_alias=AliasPath("verify", "saalschutz_samples"))
    saalschutz_max_n: int = Field(..., ge=0, validation_alias=AliasPath("verify", "saalschutz_max_n"))
    sequence_nmax: int = Field(..., ge=2, validation_alias=AliasPath("verify", "sequence_nmax"))

    # ---- verify: numeric suite ----
    verify_digits: int = Field(..., ge=10, validation_alias=AliasPath("verify", "digits"))

    # ---- evaluation ----
    guard_digits: int = Field(..., ge=0, validation_alias=AliasPath("evaluation", "guard_digits"))
    guard_bits: int = Field(..., ge=0, validation_alias=AliasPath("evaluation", "guard_bits"))
    threads: int = Field(..., ge=1, validation_alias=AliasPath("evaluation", "threads"))

    # ---- cli ----
    progress: bool = Field(False, validation_alias=AliasPath("cli", "progress"))

    @field_validator("log_level", mode="before")
    @classmethod
    def _normalise_log_level(cls, value: Any) -> Any:
        if isinstance(value, str):
            value = value.strip().upper()
            if value not in getattr(logging, "getLevelNamesMapping", lambda: logging._nameToLevel)():
                raise ValueError(f"Unknown log level: {value}")
        return value


# --------------------------------------------------------------------------- #
# File loading
# --------------------------------------------------------------------------- #
_READERS: Dict[str, Callable[[Any], Any]] = {
    ".yaml": yaml.safe_load,
    ".yml": yaml.safe_load,
    ".json": json.load,
}


def load_config_from_file(config_path: str) -> Dict[str, Any]:
    """Read a YAML or JSON config; a missing or unreadable file gives {}."""
    path = Path(config_path)
    if not path.exists():
        logger.warning("Configuration file not found: %s", path)
        return {}
    reader = _READERS.get(path.suffix.lower())
    if reader is None:
        logger.error("Unsupported configuration file format: %s", path.suffix)
        return {}
    try:
        with path.open("r", encoding="utf-8") as handle:
            data = reader(handle) or {}
    except (OSError, yaml.YAMLError, json.JSONDecodeError) as exc:  # pragma: no cover
        logger.error("Error reading configuration file %s: %s", path, exc)
        return {}
    logger.debug("Loaded configuration from %s", path)
    return data


def _find_config_file() -> Optional[Path]:
    explicit = os.getenv(CONFIG_ENV_VAR)
    if explicit:
        return Path(explicit)
    for candidate in (DEFAULT_CONFIG, DEFAULT_CONFIG.with_suffix(".yml"),
                      DEFAULT_CONFIG.with_suffix(".json"), PROJECT_ROOT / DEFAULT_CONFIG):
        if candidate.exists():
            return candidate
    return None


# --------------------------------------------------------------------------- #
# ENV overrides
# --------------------------------------------------------------------------- #
def _as_bool(raw: str) -> bool:
    return raw.strip().lower() in ("1", "true", "yes", "on")


ENV_OVERRIDES: Dict[str, Tuple[Tuple[str, ...], Callable[[str], Any]]] = {
    "PISQUARED_LOG_LEVEL": (("logging", "level"), str),
    "PISQUARED_DEBUG": (("app", "debug"), _as_bool),
    "PISQUARED_THREADS": (("evaluation", "threads"), int),
    "PISQUARED_SEED": (("verify", "seed"), int),
}


def _apply_env_overrides(config: Dict[str, Any]) -> Dict[str, Any]:
    for env_key, (path, caster) in ENV_OVERRIDES.items():
        raw = os.environ.get(env_key, "").strip()
        if not raw:
            continue
        try:
            value = caster(raw)
        except ValueError as exc:
            logger.error("Ignoring ENV override %s=%r: %s", env_key, raw, exc)
            continue
        node = config
        for key in path[:-1]:
            if not isinstance(node.get(key), dict):
                node[key] = {}
            node = node[key]
        node[path[-1]] = value
        logger.info("Config '%s' overridden from %s", ".".join(path), env_key)
    return config


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def get_settings() -> Settings:
    """Locate, load and validate the configuration; incomplete files raise ValidationError."""
    path = _find_config_file()
    if path is None:
        raise FileNotFoundError(
            f"Configuration file not found. Set {CONFIG_ENV_VAR} or place it at '{DEFAULT_CONFIG}'."
        )
    config = _apply_env_overrides(load_config_from_file(str(path)))
    try:
        return Settings(**config)
    except ValidationError as err:
        logger.error("Invalid / incomplete configuration file '%s':\n%s", path, err)
        raise


_settings: Optional[Settings] = None


def get_cached_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = get_settings()
    return _settings


def reload_settings() -> Settings:
    global _settings
    _settings = get_settings()
    logger.info("Settings reloaded")
    return _settings
