import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epsident.report import canonicalize, parse_json, render_json


def test_sorted_keys_and_trailing_newline():
    text = render_json({"b": 1, "a": 2})
    assert text == '{\n  "a": 2,\n  "b": 1\n}\n'


def test_floats_normalized_to_12_significant_digits():
    value = 0.6203351206434317
    out = canonicalize({"q": value})
    assert out["q"] == float(f"{value:.12g}")


def test_negative_zero_normalized():
    assert canonicalize(-0.0) == 0.0
    assert math.copysign(1.0, canonicalize(-0.0)) == 1.0


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        render_json({"x": math.inf})


def test_rejects_non_string_keys():
    with pytest.raises(ValueError):
        render_json({1: "x"})


def test_round_trip_byte_identical():
    report = {
        "bounds": {"pns": {"lo": 0.4, "hi": 0.7000000001}},
        "values": [1 / 3, 2 / 7, 1e-12, 123456789.123456789],
        "flags": [True, False, None],
        "name": "report",
    }
    once = render_json(report)
    again = render_json(parse_json(once))
    assert once == again


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_float_canonicalization_idempotent(x):
    once = canonicalize(x)
    assert canonicalize(once) == once
