"""Run configuration schema for Borel-WKB."""

# A complex parameter is either a real number or a [re, im] pair.
COMPLEX_VALUE = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2
        }
    ]
}

COMPLEX_LIST = {
    "anyOf": [
        COMPLEX_VALUE,
        {"type": "array", "items": COMPLEX_VALUE, "minItems": 1}
    ]
}

POSITIVE_NUMBER = {"type": "number", "exclusiveMinimum": 0}

RUN_CONFIG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "command": {
            "type": "string",
            "enum": ["coeffs", "sum", "factorial", "bounds", "bessel-compare", "oscillator"],
            "description": "Subcommand the configuration is meant for"
        },
        "app": {
            "type": "string",
            "enum": ["bessel", "oscillator"],
            "default": "bessel"
        },
        "sign": {
            "type": "string",
            "enum": ["plus", "minus"],
            "default": "minus"
        },
        "kappa": {
            "anyOf": [COMPLEX_VALUE, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}],
            "default": 0
        },
        "lambda": dict(COMPLEX_VALUE, default=0),
        "ell": {"type": "integer", "minimum": 0, "default": 0},
        "nu": COMPLEX_LIST,
        "z": COMPLEX_LIST,
        "u": COMPLEX_LIST,
        "N": {"type": "integer", "minimum": 0, "default": 12},
        "n_max": {"type": "integer", "minimum": 1, "default": 10},
        "L": {"type": "integer", "minimum": 0},
        "M": {"type": "integer", "minimum": 0},
        "omega": POSITIVE_NUMBER,
        "sigma": POSITIVE_NUMBER,
        "r": POSITIVE_NUMBER,
        "d": POSITIVE_NUMBER,
        "epsilon": dict(POSITIVE_NUMBER, default=0.05),
        "method": {
            "type": "string",
            "enum": ["asymptotic", "borel", "factorial"],
            "default": "borel"
        },
        "var": {
            "type": "string",
            "enum": ["p", "xi"],
            "default": "p"
        },
        "grid": {
            "type": "object",
            "properties": {
                "n_x": {"type": "integer", "minimum": 4, "maximum": 64},
                "n_s": {"type": "integer", "minimum": 4, "maximum": 64},
                "iterations": {"type": "integer", "minimum": 1, "maximum": 20},
                "nodes": {"type": "integer", "minimum": 16}
            },
            "additionalProperties": False
        },
        "format": {
            "type": "string",
            "enum": ["csv", "json"],
            "default": "csv"
        },
        "out": {"type": "string"},
        "seed": {"type": "integer", "default": 0}
    },
    "additionalProperties": False
}
