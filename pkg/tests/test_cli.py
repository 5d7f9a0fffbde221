"""Tests for CLI commands."""

import json
import math
import os

import pytest
import yaml
from click.testing import CliRunner

from borelwkb.cli import cli


class TestCLICommands:
    """Test CLI command functionality."""

    def setup_method(self):
        """Setup test environment."""
        self.runner = CliRunner()

    def test_cli_version(self):
        """Test CLI version display."""
        result = self.runner.invoke(cli, ['--version'])

        assert result.exit_code == 0
        assert 'version' in result.output.lower()

    def test_cli_help(self):
        """Test CLI help display."""
        result = self.runner.invoke(cli, ['--help'])

        assert result.exit_code == 0
        assert 'Borel-WKB' in result.output
        assert 'Commands:' in result.output
        for command in ('coeffs', 'sum', 'factorial', 'bounds', 'bessel-compare', 'oscillator', 'config'):
            assert command in result.output

    def test_coeffs_exact_polynomials(self):
        """Test the Bessel coefficients as exact polynomials in p."""
        result = self.runner.invoke(cli, ['coeffs', '--app', 'bessel', '--sign', 'plus', '--kappa', '0', '--n', '2',
                                          '--var', 'p'])

        assert result.exit_code == 0
        assert 'n,k,coeff_re,coeff_im,exact' in result.output
        assert '0,0,1,0,1/1' in result.output
        assert '1,1,0.125,0,1/8' in result.output

    def test_coeffs_json(self):
        """Test JSON output keeps the exact rationals."""
        result = self.runner.invoke(cli, ['coeffs', '--sign', 'plus', '--n', '1', '--var', 'p', '--format', 'json'])

        assert result.exit_code == 0
        assert '"1/8"' in result.output
        assert '"-5/24"' in result.output

    def test_coeffs_to_file(self, temp_directory):
        """Test --out writes the table to a file."""
        target = os.path.join(temp_directory, 'tables', 'a.json')
        result = self.runner.invoke(cli, ['coeffs', '--n', '2', '--var', 'p', '--format', 'json', '--out', target])

        assert result.exit_code == 0
        with open(target) as f:
            payload = json.load(f)
        assert payload['var'] == 'p'

    def test_sum_asymptotic(self):
        """Test the truncated series through the sum command."""
        result = self.runner.invoke(cli, ['sum', '--z', '2', '--u', '20', '--n', '6', '--method', 'asymptotic'])

        assert result.exit_code == 0
        assert 'z_re,z_im,u_re,u_im,sign,method,N,eta_re,eta_im,error' in result.output
        assert 'minus,asymptotic,6' in result.output

    def test_invalid_complex_flag(self):
        """Test a malformed point is a usage error."""
        result = self.runner.invoke(cli, ['sum', '--z', 'two', '--u', '20'])

        assert result.exit_code == 2

    def test_pade_degrees_too_large(self):
        """Test L + M + 1 > N is rejected before computing."""
        result = self.runner.invoke(cli, ['sum', '--z', '2', '--u', '20', '--n', '10', '--L', '5', '--M', '5'])

        assert result.exit_code == 2

    def test_missing_points(self):
        result = self.runner.invoke(cli, ['sum', '--u', '20'])

        assert result.exit_code == 2

    def test_obstructed_branch(self):
        """Test the plus oscillator solution has no domain at z = 3."""
        result = self.runner.invoke(cli, ['oscillator', '--sign', 'plus', '--z', '3', '--u', '10',
                                          '--method', 'asymptotic'])

        assert result.exit_code == 3

    def test_config_file_run(self, temp_directory):
        """Test a run driven by a YAML configuration."""
        path = os.path.join(temp_directory, 'run.yaml')
        with open(path, 'w') as f:
            yaml.safe_dump({'app': 'bessel', 'z': [[2.0, 0.0]], 'u': [[20.0, 0.0]], 'N': 4,
                            'method': 'asymptotic', 'format': 'json'}, f)

        result = self.runner.invoke(cli, ['sum', '--config', path])

        assert result.exit_code == 0
        assert '"values"' in result.output


@pytest.mark.slow
@pytest.mark.integration
class TestCertifiedRuns:
    """Test commands whose bounds need long coefficient tables."""

    def setup_method(self):
        """Setup test environment."""
        self.runner = CliRunner()

    @staticmethod
    def _data_rows(output):
        return [line.split(',') for line in output.splitlines() if line[:1].isdigit() and ' - ' not in line]

    def test_factorial_tail_is_certified(self):
        """Test the factorial command reports a finite tail bound with its default radius."""
        result = self.runner.invoke(cli, ['factorial', '--app', 'bessel', '--z', '2', '--u', '20', '--n', '10'])

        assert result.exit_code == 0
        assert 'N,partial_sum_re,partial_sum_im,tail_bound' in result.output
        rows = self._data_rows(result.output)
        assert [int(row[0]) for row in rows] == list(range(1, 11))
        tails = [float(row[3]) for row in rows]
        assert all(math.isfinite(t) and t > 0 for t in tails)
        assert tails[-1] < tails[0]

    def test_oscillator_bounds(self):
        """Test remainder bounds of the oscillator series."""
        result = self.runner.invoke(cli, ['bounds', '--app', 'oscillator', '--lambda', '0', '--ell', '1',
                                          '--z', '3', '--u', '40', '--n-max', '6'])

        assert result.exit_code == 0
        assert 'z_re,z_im,u_re,u_im,N,sigma,r,V,C,C_upper,bound,true_rem' in result.output
        rows = self._data_rows(result.output)
        assert len(rows) == 6
        for row in rows:
            C, C_upper = float(row[8]), float(row[9])
            assert 0 < C <= C_upper

    def test_bessel_compare_columns(self):
        """Test the comparison keeps complex orders and names the bound column."""
        result = self.runner.invoke(cli, ['bessel-compare', '--nu', '20', '--z', '2', '--n', '6'])

        assert result.exit_code == 0
        header = 'nu_re,nu_im,z_re,z_im,N,wkb_re,wkb_im,oracle_re,oracle_im,rel_err,thm2_bound'
        assert header in result.output
        rows = self._data_rows(result.output)
        assert len(rows) == 1
        assert float(rows[0][9]) <= float(rows[0][10])


class TestConfigCommands:
    """Test the config subcommands."""

    def setup_method(self):
        """Setup test environment."""
        self.runner = CliRunner()

    def test_init_then_validate(self, temp_directory):
        path = os.path.join(temp_directory, 'borelwkb.yaml')

        result = self.runner.invoke(cli, ['config', 'init', path])
        assert result.exit_code == 0
        assert os.path.exists(path)

        result = self.runner.invoke(cli, ['config', 'validate', path])
        assert result.exit_code == 0
        assert 'valid run configuration' in result.output

    def test_init_existing_file(self, temp_directory):
        path = os.path.join(temp_directory, 'borelwkb.yaml')
        with open(path, 'w') as f:
            f.write('app: bessel\n')

        result = self.runner.invoke(cli, ['config', 'init', path])
        assert result.exit_code == 2

        result = self.runner.invoke(cli, ['config', 'init', path, '--force'])
        assert result.exit_code == 0

    def test_validate_invalid_file(self, temp_directory):
        path = os.path.join(temp_directory, 'bad.yaml')
        with open(path, 'w') as f:
            yaml.safe_dump({'app': 'bessel', 'N': -1}, f)

        result = self.runner.invoke(cli, ['config', 'validate', path])

        assert result.exit_code == 2

    @pytest.mark.parametrize("content", ["app: [unclosed\n", "N: 4\ncolour: red\n"])
    def test_validate_rejects(self, temp_directory, content):
        path = os.path.join(temp_directory, 'bad.yaml')
        with open(path, 'w') as f:
            f.write(content)

        result = self.runner.invoke(cli, ['config', 'validate', path])

        assert result.exit_code != 0
