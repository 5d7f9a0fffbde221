"""Test suite for Borel-WKB."""
