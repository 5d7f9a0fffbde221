"""Run configuration management for Borel-WKB."""

import copy
import logging
import os
from typing import Any, Dict, Optional

import yaml

from ..utils.files import FileManager
from .schemas import RUN_CONFIG_SCHEMA
from .validator import ConfigValidationError, ConfigValidator

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = 'BOREL_WKB_THREADS'

DEFAULT_CONFIG_TEMPLATE = """\
# Borel-WKB run configuration.
# Command-line flags override the values below.
command: bessel-compare
app: bessel
sign: minus
kappa: 0
nu: [[10, 0], [20, 0]]
z: [1.5, 2.0, 3.0]
N: 6
method: asymptotic
epsilon: 0.05
format: csv
seed: 0
"""


class ConfigManager:
    """Loads, merges and saves Borel-WKB run configurations."""

    def __init__(self, verbose: bool = False):
        self.verbose = verbose
        self.validator = ConfigValidator()
        self.file_manager = FileManager(verbose=verbose)

    def load_run_config(self, config_path: str, validate: bool = True) -> Dict[str, Any]:
        """
        Load a run configuration from a YAML file.

        Args:
            config_path: Path to configuration file
            validate: Whether to validate the configuration

        Returns:
            Dict[str, Any]: Loaded configuration

        Raises:
            ConfigValidationError: If the configuration is invalid
            FileNotFoundError: If the file doesn't exist
        """
        if not os.path.exists(config_path):
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigValidationError([f"Invalid YAML in {config_path}: {e}"])

        if config is None:
            config = {}

        if validate:
            errors = self.validator.validate_run_config(config)
            if errors:
                raise ConfigValidationError(errors)

        logger.debug(f"Loaded run configuration from {config_path}")
        return config

    def merge(self, base: Optional[Dict[str, Any]], overrides: Dict[str, Any]) -> Dict[str, Any]:
        """Merge CLI overrides into a file configuration; None values are ignored."""
        merged = copy.deepcopy(base) if base else {}
        for key, value in overrides.items():
            if value is None:
                continue
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key] = {**merged[key], **value}
            else:
                merged[key] = value
        return merged

    def apply_defaults(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """Fill missing top-level keys from the schema defaults."""
        result = dict(config)
        for key, prop in RUN_CONFIG_SCHEMA['properties'].items():
            if key not in result and 'default' in prop:
                result[key] = copy.deepcopy(prop['default'])
        return result

    def validate_or_raise(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """Validate a merged configuration and return it with defaults applied."""
        errors = self.validator.validate_run_config(config)
        if errors:
            raise ConfigValidationError(errors)
        return self.apply_defaults(config)

    def save_run_config(self, config: Dict[str, Any], config_path: str) -> str:
        """
        Save a run configuration to a YAML file.

        Args:
            config: Configuration dictionary
            config_path: Destination path

        Returns:
            str: Path to the written file
        """
        text = yaml.dump(config, default_flow_style=False, sort_keys=False)
        return self.file_manager.atomic_write(config_path, text)

    def write_default_config(self, config_path: str) -> str:
        """Write the commented default configuration."""
        return self.file_manager.atomic_write(config_path, DEFAULT_CONFIG_TEMPLATE)


def worker_count() -> int:
    """Number of workers for batch sweeps, read from BOREL_WKB_THREADS."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning(f"Ignoring non-integer {THREADS_ENV_VAR}={raw!r}")
        return 1
