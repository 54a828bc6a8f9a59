"""
Unit tests for output module.
"""

import io
import json
import math

import numpy as np
import pytest

from cknsym.cylinder import CylinderField, build_grid
from cknsym.output import format_value, open_output, write_profile, write_records
from cknsym.regions import Verdict


class TestFormatValue:
    """Test CSV value text."""

    def test_float_round_trip_digits(self):
        """Test 17 significant digits."""
        assert format_value(0.1) == "0.10000000000000001"
        assert float(format_value(math.pi)) == math.pi

    def test_numpy_scalars(self):
        """Test numpy floats, ints and bools."""
        assert format_value(np.float64(0.5)) == "0.5"
        assert format_value(np.int64(7)) == "7"
        assert format_value(np.bool_(True)) == "true"

    def test_bool_before_int(self):
        """Test that bools are not printed as integers."""
        assert format_value(False) == "false"

    def test_enum_and_none(self):
        """Test enum values and empty cells."""
        assert format_value(Verdict.UNDETERMINED) == Verdict.UNDETERMINED.value
        assert format_value(None) == ""

    def test_non_finite(self):
        """Test nan and inf."""
        assert format_value(math.nan) == "nan"
        assert format_value(-math.inf) == "-inf"


class TestWriteRecords:
    """Test record emission."""

    def test_csv_layout(self):
        """Test header, first-appearance column order and line endings."""
        stream = io.StringIO()
        write_records([{"a": 1, "b": 0.5}, {"a": 2, "c": True}], stream)
        text = stream.getvalue()
        assert "\r" not in text
        lines = text.splitlines()
        assert lines[0] == "a,b,c"
        assert lines[1] == "1,0.5,nan"
        assert lines[2] == "2,nan,true"

    def test_explicit_columns(self):
        """Test a caller-supplied column order."""
        stream = io.StringIO()
        write_records([{"a": 1, "b": 2}], stream, columns=["b", "a"])
        assert stream.getvalue() == "b,a\n2,1\n"

    def test_json_lines(self):
        """Test one object per line with non-finite values as strings."""
        stream = io.StringIO()
        write_records([{"value": math.nan, "ok": np.bool_(False), "n": np.int32(3)},
                       {"value": 1.25, "verdict": Verdict.UNDETERMINED}], stream, "json")
        lines = stream.getvalue().splitlines()
        assert len(lines) == 2
        first = json.loads(lines[0])
        assert first == {"value": "nan", "ok": False, "n": 3}
        assert json.loads(lines[1])["verdict"] == Verdict.UNDETERMINED.value

    def test_unknown_format(self):
        """Test that only csv and json are accepted."""
        with pytest.raises(ValueError):
            write_records([{"a": 1}], io.StringIO(), "xml")


class TestFiles:
    """Test file destinations."""

    def test_stdout(self, capsys):
        """Test that '-' writes to stdout."""
        with open_output("-") as stream:
            write_records([{"x": 1}], stream)
        assert capsys.readouterr().out == "x\n1\n"

    def test_missing_directory(self, tmp_path):
        """Test that an unwritable path raises OSError."""
        with pytest.raises(OSError):
            with open_output(str(tmp_path / "missing" / "out.csv")):
                pass

    def test_profile(self, tmp_path):
        """Test the s, phi, w export."""
        grid = build_grid(5.0, 31, 8, 2)
        field = CylinderField(grid, np.exp(-grid.s ** 2))
        path = tmp_path / "profile.csv"
        write_profile(field, str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "s,phi,w"
        assert len(lines) == 1 + 31 * 8
        s, phi, w = (float(x) for x in lines[1].split(","))
        assert s == grid.s[0]
        assert phi == grid.phi[0]
        assert w == field.values[0, 0]
