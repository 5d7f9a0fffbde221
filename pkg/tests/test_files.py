"""Tests for output file utilities."""

import json
import os
from fractions import Fraction
from unittest.mock import patch

import numpy as np
import pytest

from borelwkb.utils.files import FileManager, format_float, jsonable, split_complex


class TestFormatting:
    """Test number formatting helpers."""

    def test_format_float_round_trips(self):
        """Test 17 significant digits reproduce the double."""
        value = 0.1 + 0.2
        assert float(format_float(value)) == value

    def test_format_float_special_values(self):
        """Test nan and infinities."""
        assert format_float(float('nan')) == "nan"
        assert format_float(float('inf')) == "inf"
        assert format_float(float('-inf')) == "-inf"

    def test_split_complex(self):
        """Test complex numbers split into two fields."""
        assert split_complex(1.5 - 2j) == ["1.5", "-2"]

    def test_jsonable_structures(self):
        """Test conversion of nested result structures."""
        payload = jsonable({'n': 3, 'x': 0.5, 'z': 1j, 'q': Fraction(5, 24), 'a': np.array([1.0, 2.0]),
                            'flag': True, 'none': None})

        assert payload == {'n': "3", 'x': "0.5", 'z': ["0", "1"], 'q': "5/24", 'a': ["1", "2"],
                           'flag': True, 'none': None}

    def test_jsonable_rejects_unknown(self):
        """Test unknown objects are refused."""
        with pytest.raises(TypeError):
            jsonable(object())


class TestFileManager:
    """Test file manager functionality."""

    def setup_method(self):
        """Setup test environment."""
        self.manager = FileManager()

    def test_atomic_write(self, temp_directory):
        """Test writing a file through a rename."""
        path = os.path.join(temp_directory, 'nested', 'out.csv')

        written = self.manager.atomic_write(path, "a,b\n")

        assert written == os.path.abspath(path)
        with open(path) as handle:
            assert handle.read() == "a,b\n"
        assert [name for name in os.listdir(os.path.dirname(path)) if name.startswith('.borelwkb-')] == []

    def test_atomic_write_replaces(self, temp_directory):
        """Test an existing file is replaced."""
        path = os.path.join(temp_directory, 'out.json')
        self.manager.atomic_write(path, "old")
        self.manager.atomic_write(path, "new")

        with open(path) as handle:
            assert handle.read() == "new"

    def test_render_csv(self):
        """Test CSV rendering with LF endings."""
        text = self.manager.render_csv(['n', 'x', 'flag', 'note'], [[1, 0.25, False, None]])

        assert text == "n,x,flag,note\n1,0.25,false,\n"

    def test_render_json(self):
        """Test JSON rendering keeps numbers as strings."""
        text = self.manager.render_json({'eta': 0.5 + 0.25j})

        assert json.loads(text) == {'eta': ["0.5", "0.25"]}
        assert text.endswith('\n')

    def test_emit_to_stdout(self):
        """Test emit echoes when no path is given."""
        with patch('click.echo') as mock_echo:
            assert self.manager.emit("x\n") is None
            mock_echo.assert_called_once_with("x\n", nl=False)

    def test_emit_to_file(self, temp_directory):
        """Test emit writes a file when a path is given."""
        path = os.path.join(temp_directory, 'rows.csv')

        assert self.manager.emit("x\n", path) == os.path.abspath(path)
        assert os.path.exists(path)
