"""Report rendering: canonical JSON, CSV cells, text suppression rules."""

from __future__ import annotations

import csv
import io
import json

import pytest

from lieck.report import render, render_csv, render_json, render_text, rows_of


def test_rows_of_picks_the_row_list():
    assert rows_of({"rows": [{"a": 1}], "ok": True}) == [{"a": 1}]
    assert rows_of({"cases": [{"a": 1}]}) == [{"a": 1}]
    assert rows_of({"pairs": [1, 2]}) == []  # not dicts
    assert rows_of({"ok": True}) == []


def test_render_json_is_canonical():
    a = {"b": 1, "a": [3, 2], "nested": {"y": True, "x": None}}
    b = {"nested": {"x": None, "y": True}, "a": [3, 2], "b": 1}
    assert render_json(a) == render_json(b)
    assert render_json(a) == '{"a":[3,2],"b":1,"nested":{"x":null,"y":true}}'
    assert json.loads(render_json(a)) == a


def test_render_csv_union_header_and_cells():
    report = {
        "rows": [
            {"row": 1, "ok": True, "failures": []},
            {"row": 2, "ok": False, "note": None, "cross": {"b": 2, "a": 1}},
        ]
    }
    out = render_csv(report)
    parsed = list(csv.reader(io.StringIO(out)))
    assert parsed[0] == ["row", "ok", "failures", "note", "cross"]
    assert parsed[1] == ["1", "true", "[]", "", ""]
    assert parsed[2] == ["2", "false", "", "", '{"a":1,"b":2}']


def test_render_csv_without_rows_uses_scalars():
    out = render_csv({"schema": 1, "target": "roots", "count": 48, "rows": "x"})
    parsed = list(csv.reader(io.StringIO(out)))
    assert parsed[0] == ["schema", "target", "count", "rows"]
    assert parsed[1] == ["1", "roots", "48", "x"]


def test_render_text_headline_and_suppression():
    report = {
        "schema": 1,
        "target": "table1",
        "ok": True,
        "rows_checked": 2,
        "rows": [
            {"row": 1, "failures": [], "cross_check": {"ok": True}, "points": 9},
            {"row": 2, "failures": [{"n": 1}], "sub": None},
        ],
    }
    text = render_text(report)
    lines = text.splitlines()
    assert lines[0] == "table1: ok"
    assert lines[1] == "  rows_checked=2"
    # row 1: empty failure list and passing sub-dict are suppressed
    assert lines[2] == "  row=1 points=9"
    assert lines[3] == '  row=2 failures=[{"n":1}] sub=-'
    assert text.endswith("\n")


def test_render_text_failure_headline():
    assert render_text({"target": "g2", "ok": False}).startswith("g2: FAILED")
    assert render_text({"note": "x"}).splitlines()[0] == "report"


def test_render_dispatch():
    report = {"ok": True, "target": "t"}
    assert render(report, "json") == render_json(report) + "\n"
    assert render(report, "csv") == render_csv(report)
    assert render(report, "text") == render_text(report)
    with pytest.raises(ValueError, match="unknown format"):
        render(report, "yaml")
