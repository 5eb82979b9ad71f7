"""Configuration validation and management for the hlr command line."""

import configparser
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

from dotenv import load_dotenv

from .cat1 import Cat4Mode
from .category import PeifferSign
from .linalg import format_rational, to_rational

LOCAL_DIR = ".hlr"
GLOBAL_CONFIG = "~/.config/hlr-toolkit/config.ini"

ENV_OVERRIDES: Dict[str, Tuple[str, str]] = {
    "HLR_CAT4_MODE": ("checks", "cat4_mode"),
    "HLR_PEIFFER_SIGN": ("checks", "peiffer_sign"),
    "HLR_OUTPUT_FORMAT": ("output", "format"),
    "HLR_LOG_LEVEL": ("logging", "level"),
}

OUTPUT_FORMATS = ("text", "json")


class ConfigValidationError(Exception):
    """Raised when configuration validation fails."""

    pass


@dataclass
class ChecksConfig:
    """Readings of the axioms whose printed form is ambiguous."""

    cat4_mode: Cat4Mode = Cat4Mode.RECONSTRUCTED
    peiffer_sign: PeifferSign = PeifferSign.PRINTED


@dataclass
class OutputConfig:
    """Configuration for report output."""

    format: str = "text"


@dataclass
class FuzzConfig:
    """Defaults for the fuzz command."""

    count: int = 1
    delta: str = "1"


@dataclass
class LoggingConfig:
    """Configuration for logging."""

    level: str = "INFO"
    file: Optional[Path] = None


def get_config_file_path(config_file: Optional[str] = None) -> Path:
    """Get the configuration file path.

    Args:
        config_file: Optional explicit config file path

    Returns:
        Path to the configuration file
    """
    if config_file:
        return Path(os.path.expanduser(config_file))

    local_config_file = Path.cwd() / LOCAL_DIR / "config.ini"
    if local_config_file.exists():
        return local_config_file

    # Fall back to the global config
    return Path(os.path.expanduser(GLOBAL_CONFIG))


def default_config() -> configparser.ConfigParser:
    """Built-in defaults, identical to what ``hlr init`` writes."""
    config = configparser.ConfigParser()
    config["checks"] = {"cat4_mode": "reconstructed", "peiffer_sign": "printed"}
    config["output"] = {"format": "text"}
    config["fuzz"] = {"count": "1", "delta": "1"}
    config["logging"] = {"level": "INFO", "file": ""}
    return config


def create_default_config(
    directory: Optional[Path] = None,
) -> Tuple[Path, configparser.ConfigParser]:
    """Write the default configuration to ``<directory>/.hlr/config.ini``.

    Args:
        directory: Project directory, defaults to the working directory

    Returns:
        Tuple of (config_path, config_parser)
    """
    config_dir = (directory or Path.cwd()) / LOCAL_DIR
    config_dir.mkdir(exist_ok=True)
    config_path = config_dir / "config.ini"

    config = default_config()
    with open(config_path, "w", encoding="utf-8") as f:
        config.write(f)

    return config_path, config


def apply_environment(config: configparser.ConfigParser) -> None:
    """Let ``HLR_*`` variables, also read from a ``.env`` file, win over the file."""
    load_dotenv()
    for variable, (section, key) in ENV_OVERRIDES.items():
        value = os.environ.get(variable)
        if value:
            if not config.has_section(section):
                config.add_section(section)
            config[section][key] = value
            logging.getLogger(__name__).debug(f"{variable} overrides [{section}] {key}")


def load_config(config_file: Optional[str] = None) -> configparser.ConfigParser:
    """Load configuration from file over the built-in defaults.

    Args:
        config_file: Optional path to config file. If not provided, uses
            default location.

    Returns:
        ConfigParser object with loaded configuration

    Raises:
        ConfigValidationError: If an explicitly requested file cannot be loaded
    """
    config = default_config()
    config_path = get_config_file_path(config_file)

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            config.read_file(f)
    except FileNotFoundError:
        if config_file:
            raise ConfigValidationError(f"Config file not found: {config_path}")
    except configparser.Error as e:
        raise ConfigValidationError(f"Error loading config file: {e}")

    apply_environment(config)
    return config


class ConfigValidator:
    """Validates and manages application configuration."""

    def __init__(self) -> None:
        """Initialize the configuration validator."""
        self.logger = logging.getLogger(__name__)

    def validate_checks_config(self, config: Dict[str, str]) -> ChecksConfig:
        """Validate the axiom readings.

        Args:
            config: Checks configuration dictionary

        Returns:
            Validated ChecksConfig object

        Raises:
            ConfigValidationError: If validation fails
        """
        mode = config.get("cat4_mode", "reconstructed").strip().lower()
        sign = config.get("peiffer_sign", "printed").strip().lower()
        try:
            cat4_mode = Cat4Mode(mode)
        except ValueError:
            raise ConfigValidationError(
                f"Invalid cat4_mode: {mode}. "
                f"Must be one of {[m.value for m in Cat4Mode]}"
            )
        try:
            peiffer_sign = PeifferSign(sign)
        except ValueError:
            raise ConfigValidationError(
                f"Invalid peiffer_sign: {sign}. "
                f"Must be one of {[s.value for s in PeifferSign]}"
            )
        if cat4_mode is Cat4Mode.STRICT:
            self.logger.warning(
                "Using the printed Cat4 reading; anchored bases will fail it"
            )
        return ChecksConfig(cat4_mode=cat4_mode, peiffer_sign=peiffer_sign)

    def validate_output_config(self, config: Dict[str, str]) -> OutputConfig:
        """Validate output configuration.

        Raises:
            ConfigValidationError: If the format is unknown
        """
        fmt = config.get("format", "text").strip().lower()
        if fmt not in OUTPUT_FORMATS:
            raise ConfigValidationError(
                f"Invalid output format: {fmt}. Must be one of {list(OUTPUT_FORMATS)}"
            )
        return OutputConfig(format=fmt)

    def validate_fuzz_config(self, config: Dict[str, str]) -> FuzzConfig:
        """Validate fuzz defaults.

        Raises:
            ConfigValidationError: If count is not a positive integer or delta
                is not rational
        """
        try:
            count = int(config.get("count", "1"))
            delta = format_rational(to_rational(config.get("delta", "1")))
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigValidationError(f"Invalid fuzz configuration value: {e}")
        if count < 1:
            raise ConfigValidationError("Fuzz count must be at least 1")
        return FuzzConfig(count=count, delta=delta)

    def validate_logging_config(self, config: Dict[str, str]) -> LoggingConfig:
        """Validate logging configuration.

        Args:
            config: Logging configuration dictionary

        Returns:
            Validated LoggingConfig object

        Raises:
            ConfigValidationError: If validation fails
        """
        level = config.get("level", "INFO").upper()
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if level not in valid_levels:
            raise ConfigValidationError(
                f"Invalid log level: {level}. Must be one of {valid_levels}"
            )

        log_file = config.get("file")
        if log_file:
            log_path = Path(os.path.expanduser(log_file))
            if not log_path.is_absolute():
                log_path = Path.cwd() / LOCAL_DIR / log_path
            try:
                log_path.parent.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                raise ConfigValidationError(
                    f"Cannot create log directory {log_path.parent}: {e}"
                )
            if not os.access(log_path.parent, os.W_OK):
                raise ConfigValidationError(
                    f"Cannot write to log directory: {log_path.parent}"
                )
            return LoggingConfig(level=level, file=log_path)

        return LoggingConfig(level=level)
