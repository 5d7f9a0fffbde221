"""Run configuration validation for Borel-WKB."""

from fractions import Fraction
from math import pi
from typing import Any, Dict, List, Union

import jsonschema

from ..utils.errors import ConfigurationError
from .schemas import RUN_CONFIG_SCHEMA


class ConfigValidationError(ConfigurationError):
    """Raised when configuration validation fails."""

    def __init__(self, errors: List[str]):
        self.errors = errors
        super().__init__(
            f"Configuration validation failed: {'; '.join(errors)}",
            suggestions=["Run 'borel-wkb config validate PATH' for the full error list"]
        )


def parse_complex(value: Any) -> complex:
    """Convert a number or an [re, im] pair into a complex number."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"Expected [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(' ', '').replace('i', 'j'))
    return complex(value)


def parse_complex_list(value: Any) -> List[complex]:
    """
    Accept a single complex value or a list of them.

    A bare two-number list is one [re, im] pair; write two real values as
    [[a, 0], [b, 0]].
    """
    if not isinstance(value, (list, tuple)):
        return [parse_complex(value)]
    if len(value) == 2 and all(isinstance(item, (int, float)) for item in value):
        return [parse_complex(value)]
    return [parse_complex(item) for item in value]


def parse_kappa(value: Any) -> Union[Fraction, complex]:
    """
    Parse the Bessel order shift.

    Integers, fractions such as "1/3" and dyadic floats stay exact so the
    polynomial backend can run in rational arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("kappa must be numeric")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except ValueError:
            return parse_complex(text)
    if isinstance(value, float):
        exact = Fraction(value)
        if exact.denominator <= 1024:
            return exact
        return complex(value)
    if isinstance(value, (list, tuple)):
        parsed = parse_complex(value)
        return parse_kappa(parsed.real) if parsed.imag == 0 else parsed
    if isinstance(value, complex):
        return parse_kappa(value.real) if value.imag == 0 else value
    raise ValueError(f"Cannot interpret kappa={value!r}")


class ConfigValidator:
    """Validates Borel-WKB run configurations."""

    def validate_run_config(self, config: Dict[str, Any]) -> List[str]:
        """
        Validate a merged run configuration.

        Args:
            config: Configuration dictionary to validate

        Returns:
            List[str]: List of validation errors (empty if valid)
        """
        errors = []

        if not isinstance(config, dict):
            return ["Configuration must be a mapping"]

        validator = jsonschema.Draft7Validator(RUN_CONFIG_SCHEMA)
        for error in sorted(validator.iter_errors(config), key=lambda e: list(e.path)):
            location = '.'.join(str(part) for part in error.path) or '<root>'
            errors.append(f"Schema validation failed at {location}: {error.message}")

        if errors:
            return errors

        errors.extend(self._validate_pade_degrees(config))
        errors.extend(self._validate_radii(config))
        errors.extend(self._validate_sigma(config))
        errors.extend(self._validate_omega(config))
        return errors

    def _validate_pade_degrees(self, config: Dict[str, Any]) -> List[str]:
        errors = []
        n_terms = config.get('N')
        L, M = config.get('L'), config.get('M')
        if n_terms is not None and L is not None and M is not None and L + M + 1 > n_terms:
            errors.append(f"Pade degrees need L + M + 1 <= N (got L={L}, M={M}, N={n_terms})")
        return errors

    def _validate_radii(self, config: Dict[str, Any]) -> List[str]:
        errors = []
        r, d = config.get('r'), config.get('d')
        if r is not None and d is not None and r >= d:
            errors.append(f"Borel radius r must be smaller than d (got r={r}, d={d})")
        return errors

    def _validate_sigma(self, config: Dict[str, Any]) -> List[str]:
        errors = []
        sigma = config.get('sigma')
        if sigma is None or 'u' not in config:
            return errors
        for u in parse_complex_list(config['u']):
            if sigma >= u.real:
                errors.append(f"sigma must be smaller than Re u (got sigma={sigma}, u={u})")
        return errors

    def _validate_omega(self, config: Dict[str, Any]) -> List[str]:
        errors = []
        omega, d = config.get('omega'), config.get('d')
        sigma = config.get('sigma')
        if omega is not None and sigma is not None and sigma >= omega:
            errors.append(f"sigma must be smaller than omega (got sigma={sigma}, omega={omega})")
        if omega is not None and d is not None:
            if omega <= pi / (4 * d):
                errors.append(f"omega must exceed pi/(4d) = {pi / (4 * d):.6g} (got {omega})")
        return errors
