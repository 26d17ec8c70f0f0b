import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from thetanull import jsonio
from thetanull.rank import rank_report


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip_exactly(x):
    assert json.loads(jsonio.dumps(x)) == x
    assert isinstance(json.loads(jsonio.dumps(x)), float)


def test_seventeen_digits():
    assert jsonio.dumps(0.1) == "0.10000000000000001"
    assert jsonio.dumps(1.0) == "1.0"
    assert jsonio.dumps(1e300) == "1.0000000000000001e+300"


def test_special_values_and_types():
    text = jsonio.dumps({"a": math.inf, "b": math.nan, "c": 1 + 2j, "d": np.arange(3), "e": True, "f": None})
    obj = json.loads(text)
    assert obj == {"a": "Infinity", "b": "NaN", "c": {"re": 1.0, "im": 2.0}, "d": [0, 1, 2], "e": True, "f": None}


def test_objects_with_to_json():
    obj = json.loads(jsonio.dumps({"r": rank_report(np.eye(2))}))
    assert obj["r"]["numerical_rank"] == 2
    with pytest.raises(TypeError):
        jsonio.dumps(object())


def test_compact_form_is_one_line():
    assert "\n" not in jsonio.dumps({"a": [1, {"b": 2}]}, indent=None)


def test_read_json_arg(tmp_path):
    assert jsonio.read_json_arg('{"g": 1}') == {"g": 1}
    p = tmp_path / "x.json"
    p.write_text("[1, 2]")
    assert jsonio.read_json_arg(str(p)) == [1, 2]
    with pytest.raises(ValueError):
        jsonio.read_json_arg("{bad")


def test_parse_complex():
    assert np.array_equal(jsonio.parse_complex_vector("0.3+0.2j, 0"), [0.3 + 0.2j, 0])
    assert np.array_equal(jsonio.parse_complex_vector('{"re": [1, 2], "im": [0, 1]}'), [1, 2 + 1j])
    M = jsonio.parse_complex_matrix({"re": [[1, 0], [0, 1]], "im": [[0, 1], [1, 0]]})
    assert M[0, 1] == 1j
    with pytest.raises(ValueError):
        jsonio.parse_complex_matrix({"re": [1, 2]})
    with pytest.raises(ValueError):
        jsonio.parse_complex_vector("x")
