"""Deterministic serialization helpers."""

import json

import numpy as np

from sigmadecay.reporting import (
    BOUNDS_HEADER,
    NORM_HEADER,
    format_cell,
    render_csv,
    render_json,
    render_loglog_svg,
)


def test_headers():
    assert NORM_HEADER == ("t", "s", "j", "target", "value", "abs_error", "nodes")
    assert BOUNDS_HEADER == (
        "bound", "zone", "line", "s", "j",
        "fitted_constant", "max_ratio", "worst_t", "worst_r", "passed",
    )


def test_format_cell():
    assert format_cell(True) == "true"
    assert format_cell(False) == "false"
    assert format_cell(7) == "7"
    assert format_cell(0.1) == "0.1"
    assert format_cell(1e-17) == "1e-17"
    assert format_cell(np.float64(0.25)) == "0.25"
    assert format_cell(np.int64(3)) == "3"
    assert format_cell("profile") == "profile"


def test_render_csv():
    text = render_csv(("a", "b"), [(1, 2.5), (True, "x")])
    assert text == "a,b\n1,2.5\ntrue,x\n"


def test_render_csv_roundtrips_floats():
    value = 0.1 + 0.2  # not equal to 0.3 in binary
    text = render_csv(("v",), [(value,)])
    assert float(text.splitlines()[1]) == value


def test_render_json_sanitizes_numpy():
    doc = {"x": np.float64(1.5), "n": np.int32(2), "flag": np.bool_(True), "arr": np.arange(3)}
    text = render_json(doc)
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed == {"x": 1.5, "n": 2, "flag": True, "arr": [0, 1, 2]}


def test_render_json_deterministic():
    doc = {"b": 1, "a": 2}
    assert render_json(doc) == render_json(doc)


def test_svg_basic_structure():
    svg = render_loglog_svg(
        [("solution", [1.0, 10.0, 100.0], [1.0, 0.5, 0.25])], title="decay"
    )
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert "polyline" in svg
    assert "solution" in svg
    assert "decay" in svg


def test_svg_filters_nonpositive_points():
    svg = render_loglog_svg(
        [("x", [1.0, 10.0, 100.0], [1.0, 0.0, 0.25])], title="t"
    )
    # the zero value cannot appear on a log axis; the line still renders
    assert "polyline" in svg


def test_svg_deterministic():
    series = [("a", [1.0, 4.0], [2.0, 1.0]), ("b", [1.0, 4.0], [3.0, 0.5])]
    assert render_loglog_svg(series, title="t") == render_loglog_svg(series, title="t")
