"""Borel-WKB - WKB coefficients, Borel resummation, factorial series and certified bounds."""

__version__ = "0.1.0"
__author__ = "Borel-WKB Development Team"
