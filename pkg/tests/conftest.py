"""Pytest configuration and shared fixtures."""

import tempfile

import pytest

from borelwkb.apps.bessel import BesselInstance
from borelwkb.apps.oscillator import OscillatorInstance


@pytest.fixture
def temp_directory():
    """Create a temporary directory for testing."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    # Cleanup
    import shutil
    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture
def bessel_instance():
    """Bessel equation of order 20 at z = 2."""
    return BesselInstance(nu=20.0, kappa=0, z=2.0)


@pytest.fixture
def oscillator_instance():
    """Rotating harmonic oscillator with u = 10 at z = 3."""
    return OscillatorInstance(u=10.0, lam=1.0, ell=0, z=3.0)


@pytest.fixture
def sample_run_config():
    """Sample run configuration for testing."""
    return {
        'command': 'sum',
        'app': 'bessel',
        'sign': 'minus',
        'kappa': '0',
        'z': [[2.0, 0.0]],
        'u': [[20.0, 0.0]],
        'N': 16,
        'L': 7,
        'M': 7,
        'method': 'borel',
        'format': 'csv',
    }
