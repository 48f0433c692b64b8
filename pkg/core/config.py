"""
Configuration management for ToriCount.

Provides YAML-based configuration with environment variable overrides,
config file discovery and defaults sized for desk-scale experiments.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional

try:
    import yaml
except ImportError:
    yaml = None  # type: ignore

from tori.errors import InputError

logger = logging.getLogger(__name__)

# environment variable -> (section, key)
ENV_OVERRIDES = {
    "TORICOUNT_MAX_FIELD_BITS": ("limits", "max_field_bits"),
    "TORICOUNT_MAX_POINTS": ("limits", "max_points"),
    "TORICOUNT_MINIMA_DIM_CAP": ("limits", "minima_dim_cap"),
}


@dataclass
class LimitsConfig:
    """
    Resource caps. Exceeding one raises a ResourceLimitError naming it.

    Attributes:
        max_field_bits: Largest field F_{p^l} allowed, as log2 of its size
        max_points: Largest number of torus points enumerated in one run
        minima_dim_cap: Largest dimension for the successive minima search
        minima_vector_budget: Search nodes allowed for one minima computation
        max_components: Largest number of coset components enumerated
    """
    max_field_bits: int = 24
    max_points: int = 10 ** 9
    minima_dim_cap: int = 6
    minima_vector_budget: int = 5_000_000
    max_components: int = 100_000


@dataclass
class NumericsConfig:
    """
    Numeric tolerances.

    Attributes:
        zeta_tolerance: Width of the bracket around ζ(s)
        lang_weil_slack: Allowed growth of the normalised Lang–Weil deviation
    """
    zeta_tolerance: float = 1e-12
    lang_weil_slack: float = 1.5


@dataclass
class ReportConfig:
    """
    JSON output settings.

    Attributes:
        indent: Indentation of JSON output
        sort_keys: Sort object keys for byte-stable output
    """
    indent: int = 2
    sort_keys: bool = True


@dataclass
class ToriCountConfig:
    """
    Complete ToriCount configuration.

    Aggregates all sections and provides loading and saving.
    """
    limits: LimitsConfig = field(default_factory=LimitsConfig)
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    report: ReportConfig = field(default_factory=ReportConfig)

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> ToriCountConfig:
        """
        Load configuration from a YAML file or discover the default file.

        Args:
            config_path: Explicit path to a config file. If None, searches default locations.

        Returns:
            ToriCountConfig with file values and environment overrides applied

        Raises:
            FileNotFoundError: If an explicit config_path does not exist
            InputError: If the file is not valid configuration
        """
        if config_path is not None:
            if not config_path.exists():
                raise FileNotFoundError(f"Configuration file not found: {config_path}")
            logger.info(f"Loading configuration from: {config_path}")
            return cls._load_from_file(config_path)

        found_config = cls._find_config_file()
        if found_config:
            logger.info(f"Found configuration file: {found_config}")
            return cls._load_from_file(found_config)

        logger.debug("No configuration file found, using defaults")
        return cls._from_dict(cls._apply_env_overrides({}))

    @classmethod
    def _find_config_file(cls) -> Optional[Path]:
        """
        Search for a configuration file.

        Search order:
            1. ./toricount.yaml
            2. ./config.yaml
            3. ~/.toricount/config.yaml
            4. ~/.config/toricount/config.yaml
        """
        search_paths = [
            Path.cwd() / "toricount.yaml",
            Path.cwd() / "config.yaml",
            Path.home() / ".toricount" / "config.yaml",
            Path.home() / ".config" / "toricount" / "config.yaml",
        ]

        for path in search_paths:
            if path.exists() and path.is_file():
                logger.debug(f"Found config file at: {path}")
                return path
        return None

    @classmethod
    def _load_from_file(cls, config_path: Path) -> ToriCountConfig:
        if yaml is None:
            logger.warning("PyYAML not installed, using default configuration")
            return cls._from_dict(cls._apply_env_overrides({}))
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            logger.error(f"Failed to parse YAML config: {e}")
            raise InputError(f"Invalid YAML configuration: {e}") from e
        if not isinstance(data, dict):
            raise InputError(f"Configuration in {config_path} must be a mapping")
        logger.debug(f"Loaded configuration data: {data}")
        return cls._from_dict(cls._apply_env_overrides(data))

    @classmethod
    def _from_dict(cls, data: dict) -> ToriCountConfig:
        try:
            return cls(
                limits=LimitsConfig(**(data.get("limits") or {})),
                numerics=NumericsConfig(**(data.get("numerics") or {})),
                report=ReportConfig(**(data.get("report") or {})),
            )
        except TypeError as e:
            logger.error(f"Invalid configuration structure: {e}")
            raise InputError(f"Configuration has invalid fields: {e}") from e

    @classmethod
    def _apply_env_overrides(cls, data: dict) -> dict:
        """
        Override integer caps with TORICOUNT_* environment variables.

        Raises:
            InputError: If an override is not an integer
        """
        for variable, (section, key) in ENV_OVERRIDES.items():
            if variable not in os.environ:
                continue
            raw = os.environ[variable]
            try:
                value = int(raw)
            except ValueError as e:
                raise InputError(f"{variable}={raw!r} is not an integer") from e
            data.setdefault(section, {})
            data[section] = dict(data[section] or {}, **{key: value})
            logger.debug(f"Applied {variable} override: {value}")
        return data

    def with_overrides(self, **limits) -> ToriCountConfig:
        """Return a copy with the given limit fields replaced (None values are ignored)."""
        data = asdict(self)
        data["limits"].update({key: value for key, value in limits.items() if value is not None})
        return ToriCountConfig._from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)

    def save(self, config_path: Optional[Path] = None) -> None:
        """
        Save configuration to a YAML file.

        Args:
            config_path: Target file. If None, saves to ~/.toricount/config.yaml

        Raises:
            ImportError: If PyYAML is not installed
        """
        if yaml is None:
            raise ImportError("PyYAML is required to save configuration files. Install with: pip install pyyaml")

        if config_path is None:
            config_path = Path.home() / ".toricount" / "config.yaml"
        config_path.parent.mkdir(parents=True, exist_ok=True)

        try:
            with open(config_path, "w", encoding="utf-8") as f:
                yaml.safe_dump(asdict(self), f, default_flow_style=False, sort_keys=False)
            logger.info(f"Configuration saved to: {config_path}")
        except OSError as e:
            logger.error(f"Failed to save configuration: {e}", exc_info=True)
            raise


_global_config: Optional[ToriCountConfig] = None


def get_config() -> ToriCountConfig:
    """Get or create the global configuration instance."""
    global _global_config

    if _global_config is None:
        logger.debug("Initializing global configuration")
        _global_config = ToriCountConfig.load()

    return _global_config


def reload_config(config_path: Optional[Path] = None) -> ToriCountConfig:
    """
    Reload the global configuration from file.

    Args:
        config_path: Optional explicit path to config file
    """
    global _global_config

    logger.debug("Reloading configuration")
    _global_config = ToriCountConfig.load(config_path)
    return _global_config


def reset_config() -> ToriCountConfig:
    """Reset the global configuration to defaults."""
    global _global_config

    _global_config = ToriCountConfig()
    return _global_config


def set_config(config: ToriCountConfig) -> ToriCountConfig:
    """Install a configuration (e.g. one with CLI overrides) as the global instance."""
    global _global_config

    _global_config = config
    return _global_config
