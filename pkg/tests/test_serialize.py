import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperpolygon.serialize import dumps, loads


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=8))
def test_floats_round_trip_exactly(values):
    back = loads(dumps({"x": values}))["x"]
    assert all(isinstance(v, float) for v in back)
    assert [math.copysign(1, v) for v in back] == [math.copysign(1, v) for v in values]
    assert back == values


def test_layout():
    text = dumps({"a": [1.0, 2.5], "m": np.eye(2), "s": "x", "b": True, "n": None, "i": 3})
    assert text == (
        '{\n  "a": [1.0, 2.5],\n  "m": [\n    [1.0, 0.0],\n    [0.0, 1.0]\n  ],\n'
        '  "s": "x",\n  "b": true,\n  "n": null,\n  "i": 3\n}\n'
    )


def test_seventeen_digits():
    assert dumps([0.1]) == "[0.10000000000000001]\n"


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        dumps([float("nan")])
