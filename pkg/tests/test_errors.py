"""Tests for error handling system."""

from unittest.mock import patch

import click
import pytest

from borelwkb.utils.errors import (
    EXIT_ACCEPTANCE, EXIT_GENERIC, EXIT_NUMERICAL, EXIT_VALIDATION,
    BorelWKBError, BoundViolated, BranchMismatch, ConfigurationError, DegeneratePade,
    ErrorHandler, NumericalError, ParameterOrder, PoleOnContour, ValidationError, ValidationFailure,
    create_error_suggestions, exit_code_for, format_validation_errors
)


class TestBorelWKBError:
    """Test custom error classes."""

    def test_error_basic(self):
        """Test basic BorelWKBError functionality."""
        error = BorelWKBError("Test error message")

        assert str(error) == "Test error message"
        assert error.message == "Test error message"
        assert error.details is None
        assert error.suggestions == []

    def test_error_with_details(self):
        """Test BorelWKBError with details and suggestions."""
        suggestions = ["Try this", "Or try that"]
        error = BorelWKBError("Test error", details="Detailed explanation", suggestions=suggestions)

        assert error.details == "Detailed explanation"
        assert error.suggestions == suggestions

    def test_error_families(self):
        """Test that each error lands in its family."""
        assert isinstance(ConfigurationError("x"), ValidationFailure)
        assert isinstance(ValidationError("x"), ValidationFailure)
        assert isinstance(DegeneratePade("x"), NumericalError)
        assert isinstance(ParameterOrder("x"), NumericalError)
        assert not isinstance(BoundViolated("x"), NumericalError)


class TestExitCodes:
    """Test mapping of errors to process exit codes."""

    @pytest.mark.parametrize("error, code", [
        (ValidationError("bad N"), EXIT_VALIDATION),
        (ConfigurationError("bad file"), EXIT_VALIDATION),
        (click.BadParameter("bad flag"), EXIT_VALIDATION),
        (BranchMismatch("wrong branch"), EXIT_NUMERICAL),
        (DegeneratePade("singular"), EXIT_NUMERICAL),
        (BoundViolated("breach"), EXIT_ACCEPTANCE),
        (RuntimeError("boom"), EXIT_GENERIC),
    ])
    def test_exit_code_for(self, error, code):
        """Test exit code per error family."""
        assert exit_code_for(error) == code


class TestErrorHandler:
    """Test error handler functionality."""

    def setup_method(self):
        """Setup test environment."""
        self.handler = ErrorHandler(verbose=False)
        self.verbose_handler = ErrorHandler(verbose=True)

    def test_handle_package_error(self):
        """Test handling package errors with details and suggestions."""
        error = DegeneratePade("Pade system is singular", details="rank 3 of 4",
                               suggestions=["Lower M", "Increase N"])

        with patch('click.echo') as mock_echo:
            self.handler.handle_error(error, "Borel summation")

            assert mock_echo.call_count >= 5
            error_calls = [call for call in mock_echo.call_args_list if '✗' in str(call)]
            assert len(error_calls) == 1
            assert any('Borel summation' in str(call) for call in mock_echo.call_args_list)

    def test_default_suggestions_per_error_type(self):
        """Test errors raised without suggestions fall back to those of their type."""
        with patch('click.echo') as mock_echo:
            self.handler.handle_error(PoleOnContour("Pade pole at t=1.2"))

            printed = [str(call) for call in mock_echo.call_args_list]
            assert any('Suggestions' in line for line in printed)
            assert any('Use the factorial series instead' in line for line in printed)

    def test_explicit_suggestions_win(self):
        """Test suggestions passed to the error replace the defaults."""
        with patch('click.echo') as mock_echo:
            self.handler.handle_error(PoleOnContour("Pade pole", suggestions=["Lower M"]))

            printed = [str(call) for call in mock_echo.call_args_list]
            assert any('Lower M' in line for line in printed)
            assert not any('factorial series' in line for line in printed)

    def test_no_default_suggestions(self):
        """Test errors without a type print no suggestion block."""
        with patch('click.echo') as mock_echo:
            self.handler.handle_error(ValidationError("N must be at least 1"))

            assert not any('Suggestions' in str(call) for call in mock_echo.call_args_list)

    def test_handle_file_not_found(self):
        """Test handling FileNotFoundError."""
        with patch('click.echo') as mock_echo:
            self.handler.handle_error(FileNotFoundError("run.yaml"))

            assert 'File not found' in str(mock_echo.call_args_list[0])

    def test_handle_arithmetic_error(self):
        """Test handling floating point failures."""
        with patch('click.echo') as mock_echo:
            self.handler.handle_error(ZeroDivisionError("division by zero"))

            assert 'Arithmetic failure' in str(mock_echo.call_args_list[0])

    def test_handle_error_with_verbose(self):
        """Test error handling with verbose output."""
        with patch('click.echo'):
            with patch('traceback.print_exc') as mock_traceback:
                self.verbose_handler.handle_error(BorelWKBError("Test error"))

                mock_traceback.assert_called_once()

    def test_exit_with_error_uses_family_code(self):
        """Test exit_with_error picks the exit code of the error family."""
        with patch('click.echo'):
            with patch('sys.exit') as mock_exit:
                self.handler.exit_with_error(BoundViolated("breach"))

                mock_exit.assert_called_once_with(EXIT_ACCEPTANCE)

    def test_exit_with_explicit_code(self):
        """Test exit_with_error with an explicit code."""
        with patch('click.echo'):
            with patch('sys.exit') as mock_exit:
                self.handler.exit_with_error(ValidationError("bad"), exit_code=7)

                mock_exit.assert_called_once_with(7)


class TestErrorUtilities:
    """Test error utility functions."""

    def test_create_error_suggestions(self):
        """Test suggestions per error type."""
        suggestions = create_error_suggestions('pole_on_contour')

        assert len(suggestions) == 3
        assert any('Pade' in s for s in suggestions)

    def test_create_error_suggestions_with_value(self):
        """Test suggestions carry the offending value."""
        suggestions = create_error_suggestions('parameter_order', value='sigma=3')

        assert suggestions[-1] == "Offending value: sigma=3"

    def test_unknown_error_type(self):
        """Test unknown error types give no suggestions."""
        assert create_error_suggestions('unknown') == []

    def test_format_validation_errors(self):
        """Test formatting of validation error lists."""
        assert format_validation_errors([]) == "No validation errors"
        assert format_validation_errors(["N: too small"]) == "Validation error: N: too small"

        formatted = format_validation_errors(["first", "second"])
        assert formatted.startswith("Validation errors:")
        assert "1. first" in formatted
        assert "2. second" in formatted
