"""Output file utilities for Borel-WKB."""

import csv
import io
import json
import logging
import os
import tempfile
from typing import Any, Iterable, List, Optional, Sequence

import click

logger = logging.getLogger(__name__)


def format_float(value: float) -> str:
    """Format a real number with 17 significant digits."""
    value = float(value)
    if value != value:
        return "nan"
    if value in (float('inf'), float('-inf')):
        return "inf" if value > 0 else "-inf"
    return format(value, '.17g')


def split_complex(value: complex) -> List[str]:
    """Return the real and imaginary parts of a complex number as two fields."""
    value = complex(value)
    return [format_float(value.real), format_float(value.imag)]


def jsonable(obj: Any) -> Any:
    """
    Convert a result structure into JSON-ready data.

    Numbers become decimal strings so readers cannot round them; complex
    numbers become ``[re, im]`` string pairs.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, complex):
        return split_complex(obj)
    if hasattr(obj, 'numerator') and hasattr(obj, 'denominator'):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if hasattr(obj, 'to_dict'):
        return jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(key): jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(item) for item in obj]
    if hasattr(obj, 'tolist'):
        return jsonable(obj.tolist())
    raise TypeError(f"Cannot serialise object of type {type(obj).__name__}")


class FileManager:
    """Writes run artifacts without leaving partial files behind."""

    def __init__(self, verbose: bool = False):
        """Initialize file manager."""
        self.verbose = verbose

    def atomic_write(self, path: str, text: str) -> str:
        """
        Write text to a file through a temporary file and a rename.

        Args:
            path: Destination path
            text: File content

        Returns:
            str: Absolute path of the written file
        """
        target = os.path.abspath(path)
        directory = os.path.dirname(target) or '.'
        os.makedirs(directory, exist_ok=True)

        fd, tmp_path = tempfile.mkstemp(prefix='.borelwkb-', dir=directory)
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='') as handle:
                handle.write(text)
            os.replace(tmp_path, target)
        except BaseException:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise

        if self.verbose:
            logger.debug(f"Wrote {len(text)} characters to {target}")
        return target

    def render_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        """Render rows as CSV with a header row and LF line endings."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([self._csv_field(value) for value in row])
        return buffer.getvalue()

    def render_json(self, payload: Any) -> str:
        """Render a payload as indented JSON with string-encoded numbers."""
        return json.dumps(jsonable(payload), indent=2) + '\n'

    def emit(self, text: str, out: Optional[str] = None) -> Optional[str]:
        """Write text to ``out`` atomically, or to stdout when no path is given."""
        if out:
            return self.atomic_write(out, text)
        click.echo(text, nl=False)
        return None

    @staticmethod
    def _csv_field(value: Any) -> str:
        if isinstance(value, bool) or value is None:
            return '' if value is None else str(value).lower()
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            return format_float(value)
        return str(value)
