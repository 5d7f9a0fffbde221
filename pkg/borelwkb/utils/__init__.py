"""Utilities for Borel-WKB."""

from .files import FileManager, format_float
from .logging import setup_logging

__all__ = ['FileManager', 'format_float', 'setup_logging']
