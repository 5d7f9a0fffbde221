"""Run configuration for Borel-WKB."""

from .manager import ConfigManager, worker_count
from .validator import ConfigValidationError, ConfigValidator, parse_complex, parse_complex_list, parse_kappa

__all__ = [
    'ConfigManager', 'ConfigValidator', 'ConfigValidationError',
    'parse_complex', 'parse_complex_list', 'parse_kappa', 'worker_count',
]
