"""Tests for configuration management."""

import os
import tempfile
from fractions import Fraction

import pytest
import yaml

from borelwkb.config.manager import ConfigManager, worker_count
from borelwkb.config.validator import (
    ConfigValidationError, ConfigValidator, parse_complex, parse_complex_list, parse_kappa
)
from borelwkb.utils.errors import EXIT_VALIDATION, exit_code_for


class TestConfigValidator:
    """Test run configuration validation."""

    def setup_method(self):
        """Setup test environment."""
        self.validator = ConfigValidator()

    def test_valid_config(self, sample_run_config):
        """Test a complete configuration passes."""
        assert self.validator.validate_run_config(sample_run_config) == []

    def test_unknown_key(self):
        """Test unknown keys are rejected."""
        errors = self.validator.validate_run_config({'colour': 'blue'})

        assert len(errors) == 1
        assert 'colour' in errors[0]

    def test_bad_enum(self):
        """Test enum values are enforced."""
        errors = self.validator.validate_run_config({'method': 'magic'})

        assert errors and 'method' in errors[0]

    def test_negative_terms(self):
        """Test N must be non-negative."""
        assert self.validator.validate_run_config({'N': -1})

    def test_pade_degrees_need_enough_terms(self):
        """Test L + M + 1 <= N."""
        errors = self.validator.validate_run_config({'N': 10, 'L': 5, 'M': 5})

        assert errors == ["Pade degrees need L + M + 1 <= N (got L=5, M=5, N=10)"]

    def test_radius_below_d(self):
        """Test r < d."""
        errors = self.validator.validate_run_config({'r': 0.5, 'd': 0.5})

        assert len(errors) == 1 and 'r must be smaller than d' in errors[0]

    def test_sigma_below_re_u(self):
        """Test sigma < Re u for every u."""
        errors = self.validator.validate_run_config({'sigma': 6.0, 'u': [[5.0, 0.0], [10.0, 0.0]]})

        assert len(errors) == 1

    def test_omega_threshold(self):
        """Test omega > pi/(4d) and sigma < omega."""
        errors = self.validator.validate_run_config({'omega': 0.5, 'd': 1.0, 'sigma': 1.0})

        assert len(errors) == 2

    def test_rational_kappa_string(self):
        """Test kappa may be written as a fraction."""
        assert self.validator.validate_run_config({'kappa': '1/3'}) == []
        assert self.validator.validate_run_config({'kappa': 'one third'})

    def test_not_a_mapping(self):
        """Test non-mapping configurations."""
        assert self.validator.validate_run_config([1, 2]) == ["Configuration must be a mapping"]


class TestParsing:
    """Test parsing of complex and rational parameters."""

    def test_parse_complex(self):
        """Test numbers, pairs and strings."""
        assert parse_complex(2) == 2 + 0j
        assert parse_complex([1, -2]) == 1 - 2j
        assert parse_complex("1+2i") == 1 + 2j

    def test_parse_complex_bad_pair(self):
        """Test pairs of the wrong length."""
        with pytest.raises(ValueError):
            parse_complex([1, 2, 3])

    def test_parse_complex_list(self):
        """Test single values, pairs and lists."""
        assert parse_complex_list(2.0) == [2.0]
        assert parse_complex_list([2.0, 1.0]) == [2.0 + 1.0j]
        assert parse_complex_list([[2.0, 0.0], [3.0, 0.0]]) == [2.0, 3.0]
        assert parse_complex_list([1.5, 2.0, 3.0]) == [1.5, 2.0, 3.0]

    def test_parse_kappa_exact(self):
        """Test kappa stays rational where possible."""
        assert parse_kappa(0) == Fraction(0)
        assert parse_kappa("1/3") == Fraction(1, 3)
        assert parse_kappa(0.5) == Fraction(1, 2)
        assert parse_kappa([0.25, 0.0]) == Fraction(1, 4)

    def test_parse_kappa_complex(self):
        """Test non-real kappa stays complex."""
        assert parse_kappa([0.5, 1.0]) == 0.5 + 1.0j
        assert isinstance(parse_kappa(0.1), complex)

    def test_parse_kappa_rejects_bool(self):
        """Test booleans are not orders."""
        with pytest.raises(ValueError):
            parse_kappa(True)


class TestConfigManager:
    """Test configuration manager functionality."""

    def setup_method(self):
        """Setup test environment."""
        self.config_manager = ConfigManager()
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """Cleanup test environment."""
        import shutil
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_save_and_load(self, sample_run_config):
        """Test a saved configuration loads back unchanged."""
        path = os.path.join(self.temp_dir, 'run.yaml')
        self.config_manager.save_run_config(sample_run_config, path)

        assert self.config_manager.load_run_config(path) == sample_run_config

    def test_load_missing_file(self):
        """Test loading a file that does not exist."""
        with pytest.raises(FileNotFoundError):
            self.config_manager.load_run_config(os.path.join(self.temp_dir, 'missing.yaml'))

    def test_load_invalid_yaml(self):
        """Test loading broken YAML."""
        path = os.path.join(self.temp_dir, 'broken.yaml')
        with open(path, 'w') as f:
            f.write("N: [1, 2\n")

        with pytest.raises(ConfigValidationError) as exc_info:
            self.config_manager.load_run_config(path)
        assert 'Invalid YAML' in exc_info.value.errors[0]

    def test_load_invalid_config(self):
        """Test loading a configuration that fails validation."""
        path = os.path.join(self.temp_dir, 'bad.yaml')
        with open(path, 'w') as f:
            yaml.dump({'N': 4, 'L': 3, 'M': 3}, f)

        with pytest.raises(ConfigValidationError) as exc_info:
            self.config_manager.load_run_config(path)
        assert exit_code_for(exc_info.value) == EXIT_VALIDATION

    def test_load_empty_file(self):
        """Test an empty file is an empty configuration."""
        path = os.path.join(self.temp_dir, 'empty.yaml')
        open(path, 'w').close()

        assert self.config_manager.load_run_config(path) == {}

    def test_merge_ignores_none(self):
        """Test CLI overrides replace file values but None does not."""
        merged = self.config_manager.merge({'N': 8, 'grid': {'n_x': 16}},
                                           {'N': 12, 'L': None, 'grid': {'n_s': 24}})

        assert merged == {'N': 12, 'grid': {'n_x': 16, 'n_s': 24}}

    def test_merge_does_not_mutate(self):
        """Test merge leaves the base untouched."""
        base = {'grid': {'n_x': 16}}
        self.config_manager.merge(base, {'grid': {'n_x': 32}})

        assert base == {'grid': {'n_x': 16}}

    def test_validate_or_raise_applies_defaults(self):
        """Test defaults fill missing keys."""
        config = self.config_manager.validate_or_raise({'N': 6})

        assert config['N'] == 6
        assert config['method'] == 'borel'
        assert config['sign'] == 'minus'
        assert config['format'] == 'csv'

    def test_validate_or_raise_rejects(self):
        """Test invalid merged configurations raise."""
        with pytest.raises(ConfigValidationError):
            self.config_manager.validate_or_raise({'format': 'xml'})

    def test_default_template_is_valid(self):
        """Test the written template passes validation."""
        path = os.path.join(self.temp_dir, 'default.yaml')
        self.config_manager.write_default_config(path)

        config = self.config_manager.load_run_config(path)
        assert config['command'] == 'bessel-compare'
        assert parse_complex_list(config['z']) == [1.5, 2.0, 3.0]


class TestWorkerCount:
    """Test the worker count environment variable."""

    def test_default(self, monkeypatch):
        monkeypatch.delenv('BOREL_WKB_THREADS', raising=False)
        assert worker_count() == 1

    def test_value(self, monkeypatch):
        monkeypatch.setenv('BOREL_WKB_THREADS', '4')
        assert worker_count() == 4

    def test_garbage(self, monkeypatch):
        monkeypatch.setenv('BOREL_WKB_THREADS', 'many')
        assert worker_count() == 1
