"""Setup configuration for Borel-WKB."""

from setuptools import setup, find_packages
import os
import sys

here = os.path.abspath(os.path.dirname(__file__))

# Get the long description from the README file
with open(os.path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

# Import version and author from package
sys.path.insert(0, here)
from borelwkb import __version__, __author__

setup(
    name="borel-wkb",
    version=__version__,
    description="WKB coefficients, Borel resummation, factorial series and certified error bounds",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author=__author__,
    keywords="wkb borel resummation asymptotics bessel factorial-series cli",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.8",
    install_requires=[
        "click>=8.0.0",
        "pyyaml>=6.0",
        "jsonschema>=4.0.0",
        "numpy>=1.22",
        "scipy>=1.8",
        "mpmath>=1.2",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "hypothesis>=6.0",
            "ruff>=0.12.0",
            "mypy>=0.991",
        ],
    },
    entry_points={
        "console_scripts": [
            "borel-wkb=borelwkb.cli:main",
        ],
    },
)
