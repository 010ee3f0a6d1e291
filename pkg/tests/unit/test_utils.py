"""
Tests for serialization and input checks
"""

import json
from enum import Enum

import numpy as np
import pytest
from pydantic import BaseModel

from clusterfx.core.exceptions import DimensionMismatch
from clusterfx.utils.serialization import dump_json, to_jsonable
from clusterfx.utils.validation import ensure_finite, ensure_length, ensure_square


class Colour(str, Enum):
    RED = "red"


class Point(BaseModel):
    x: float
    tag: Colour


class TestToJsonable:
    """Test suite for to_jsonable."""

    def test_numpy_values(self):
        """Arrays and numpy scalars become plain Python values."""
        out = to_jsonable({"a": np.arange(3), "b": np.float64(0.25), "c": np.int64(4), "d": np.bool_(True)})
        assert out == {"a": [0, 1, 2], "b": 0.25, "c": 4, "d": True}
        assert type(out["c"]) is int

    def test_non_finite_becomes_null(self):
        """NaN and infinity have no JSON representation."""
        assert to_jsonable([np.nan, np.inf, 1.0]) == [None, None, 1.0]

    def test_models_and_enums(self):
        """Pydantic models are dumped and enums reduced to their values."""
        assert to_jsonable(Point(x=1.5, tag=Colour.RED)) == {"x": 1.5, "tag": "red"}


class TestDumpJson:
    """Test suite for dump_json."""

    def test_writes_utf8_file(self, temp_dir):
        """Output is written and reparses to the same structure."""
        path = temp_dir / "out.json"
        text = dump_json({"p": np.array([0.1, 0.2])}, path)
        assert json.loads(path.read_text(encoding="utf-8")) == {"p": [0.1, 0.2]}
        assert json.loads(text) == {"p": [0.1, 0.2]}

    def test_full_precision(self):
        """Floats keep every digit."""
        value = 1.0 / 3.0
        assert json.loads(dump_json([value]))[0] == value


class TestEnsure:
    """Test suite for shape and finiteness checks."""

    def test_ensure_square(self):
        """Non-square matrices are rejected."""
        assert ensure_square(np.eye(2)).shape == (2, 2)
        with pytest.raises(DimensionMismatch):
            ensure_square(np.zeros((2, 3)))

    def test_ensure_length(self):
        """Vectors must have the expected length."""
        with pytest.raises(DimensionMismatch):
            ensure_length([1.0, 2.0], 3)

    def test_ensure_finite(self):
        """NaN entries are rejected."""
        with pytest.raises(DimensionMismatch):
            ensure_finite([1.0, np.nan])
