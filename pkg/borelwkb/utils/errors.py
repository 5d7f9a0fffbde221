"""Error handling utilities for Borel-WKB."""

import sys
import traceback
from typing import List, Optional

import click

# Exit codes shared by every subcommand.
EXIT_GENERIC = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4


class BorelWKBError(Exception):
    """Base exception for Borel-WKB errors."""

    exit_code = EXIT_GENERIC
    error_type: Optional[str] = None

    def __init__(self, message: str, details: Optional[str] = None, suggestions: Optional[list] = None):
        self.message = message
        self.details = details
        self.suggestions = suggestions or []
        super().__init__(message)


class ValidationFailure(BorelWKBError):
    """Base class for invalid inputs and failed preconditions."""

    exit_code = EXIT_VALIDATION


class ConfigurationError(ValidationFailure):
    """Raised when a run configuration is invalid or missing."""

    error_type = "configuration_invalid"


class ValidationError(ValidationFailure):
    """Raised when a parameter violates the precondition of an operation."""
    pass


class NumericalError(BorelWKBError):
    """Base class for failures of a numerical algorithm."""

    exit_code = EXIT_NUMERICAL


class DomainError(NumericalError):
    """Raised when a point lies outside the declared domain or on a cut."""

    error_type = "branch"


class BranchAmbiguity(NumericalError):
    """Raised when f0^(1/2) cannot be continued along a contour."""

    error_type = "branch"


class BranchMismatch(NumericalError):
    """Raised when a point is not in the domain required by the chosen solution."""
    pass


class SingularityHit(NumericalError):
    """Raised when a traced ray runs into a zero of f0."""
    pass


class StepFailure(NumericalError):
    """Raised when the ray integrator cannot meet its tolerance."""
    pass


class TruncationError(NumericalError):
    """Raised when a ray function does not decay at the far end of the ray."""

    error_type = "truncation"


class DegeneratePade(NumericalError):
    """Raised when the Pade linear system is rank deficient."""

    error_type = "degenerate_pade"


class PoleOnContour(NumericalError):
    """Raised when a Pade denominator has a root close to the Laplace contour."""

    error_type = "pole_on_contour"


class GridTooCoarse(NumericalError):
    """Raised when the contraction iteration stops contracting."""
    pass


class ParameterOrder(NumericalError):
    """Raised when parameters violate an ordering such as Re u > sigma."""

    error_type = "parameter_order"


class ConditionViolated(NumericalError):
    """Raised when no finite constant certifies the decay condition."""
    pass


class TailNotNegligible(NumericalError):
    """Raised when a truncated Borel series is not converged on the sampling circle."""

    error_type = "tail"


class PrecisionLoss(NumericalError):
    """Raised when the reference oracle loses too many digits."""
    pass


class Overflow(NumericalError):
    """Raised when a value does not fit the requested fixed-width type."""
    pass


class BoundViolated(BorelWKBError):
    """Raised when an observed error exceeds its certified bound."""

    exit_code = EXIT_ACCEPTANCE


def exit_code_for(error: Exception) -> int:
    """Map an exception to the process exit code."""
    if isinstance(error, BorelWKBError):
        return error.exit_code
    if isinstance(error, click.BadParameter):
        return EXIT_VALIDATION
    return EXIT_GENERIC


class ErrorHandler:
    """Handles and formats errors for user-friendly display."""

    def __init__(self, verbose: bool = False):
        self.verbose = verbose

    def handle_error(self, error: Exception, context: Optional[str] = None) -> None:
        """
        Handle and display error with appropriate formatting.

        Args:
            error: Exception to handle
            context: Optional context about when/where error occurred
        """
        if isinstance(error, BorelWKBError):
            self._handle_borelwkb_error(error, context)
        else:
            self._handle_generic_error(error, context)

    def _handle_borelwkb_error(self, error: BorelWKBError, context: Optional[str]) -> None:
        """Handle errors raised by this package."""
        click.echo(f"✗ {error.message}", err=True)

        if context:
            click.echo(f"Context: {context}", err=True)

        if error.details:
            click.echo(f"Details: {error.details}", err=True)

        suggestions = error.suggestions or create_error_suggestions(error.error_type)
        if suggestions:
            click.echo("\nSuggestions:", err=True)
            for suggestion in suggestions:
                click.echo(f"  • {suggestion}", err=True)

        if self.verbose:
            click.echo("\nFull traceback:", err=True)
            traceback.print_exc()

    def _handle_generic_error(self, error: Exception, context: Optional[str]) -> None:
        """Handle generic Python exceptions."""
        error_type = type(error).__name__

        if isinstance(error, FileNotFoundError):
            message = f"File not found: {error}"
            suggestions = [
                "Check that the file path is correct",
                "Ensure the file exists and is readable"
            ]
        elif isinstance(error, PermissionError):
            message = f"Permission denied: {error}"
            suggestions = [
                "Check file/directory permissions",
                "Choose an output directory you can write to"
            ]
        elif isinstance(error, (FloatingPointError, OverflowError, ZeroDivisionError)):
            message = f"Arithmetic failure: {error}"
            suggestions = [
                "Reduce the truncation order N",
                "Move the evaluation point away from the singular points"
            ]
        else:
            message = f"{error_type}: {error}"
            suggestions = []

        click.echo(f"✗ {message}", err=True)

        if context:
            click.echo(f"Context: {context}", err=True)

        if suggestions:
            click.echo("\nSuggestions:", err=True)
            for suggestion in suggestions:
                click.echo(f"  • {suggestion}", err=True)

        if self.verbose:
            click.echo("\nFull traceback:", err=True)
            traceback.print_exc()

    def exit_with_error(self, error: Exception, context: Optional[str] = None,
                        exit_code: Optional[int] = None) -> None:
        """Handle error and exit with the code of its error family."""
        self.handle_error(error, context)
        sys.exit(exit_code if exit_code is not None else exit_code_for(error))


def create_error_suggestions(error_type: Optional[str], **kwargs) -> List[str]:
    """
    Create contextual error suggestions based on error type.

    Args:
        error_type: Type of error
        **kwargs: Additional context information

    Returns:
        list: List of suggestion strings
    """
    suggestions = {
        'pole_on_contour': [
            "Lower the Pade denominator degree M",
            "Move the evaluation point away from the Stokes curve",
            "Use the factorial series instead"
        ],
        'degenerate_pade': [
            "Lower the Pade denominator degree M",
            "Increase the number of Borel coefficients N"
        ],
        'truncation': [
            "Increase the number of collocation nodes",
            "Check that the potential decays along the ray"
        ],
        'branch': [
            "Pass a contour hint that avoids the branch cut",
            "Re-anchor the ray at a point further from the cut"
        ],
        'parameter_order': [
            "Choose sigma and omega below Re u",
            "Increase Re u"
        ],
        'configuration_invalid': [
            "Check YAML syntax in configuration file",
            "Verify all required fields are present",
            "Validate configuration values are correct"
        ],
        'tail': [
            "Increase the coefficient table length",
            "Decrease the radius r"
        ],
    }

    result = list(suggestions.get(error_type, []))
    if kwargs.get('value') is not None:
        result.append(f"Offending value: {kwargs['value']}")
    return result


def format_validation_errors(errors: list) -> str:
    """
    Format validation errors for display.

    Args:
        errors: List of validation error messages

    Returns:
        str: Formatted error message
    """
    if not errors:
        return "No validation errors"

    if len(errors) == 1:
        return f"Validation error: {errors[0]}"

    formatted = "Validation errors:\n"
    for i, error in enumerate(errors, 1):
        formatted += f"  {i}. {error}\n"

    return formatted.strip()
