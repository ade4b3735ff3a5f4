import json
import math

import numpy as np
import pytest

from qshje.tables import format_float, write_summary, write_table


def test_format_float_round_trips():
    for x in (0.1, -0.25, 1.0 / 3.0, 1e-300, 2.0**52 + 1.0):
        assert float(format_float(x)) == x


def test_format_float_nonfinite():
    assert format_float(float("nan")) == "nan"
    assert format_float(float("inf")) == "inf"
    assert format_float(float("-inf")) == "-inf"


def test_write_table_csv(tmp_path):
    rows = [(0.5, np.float64(1.25), np.bool_(True)), (1.5, float("nan"), False)]
    out = write_table(
        str(tmp_path / "demo"), "azimuthal", "a + b = 0", ["q", "value", "ok"], rows
    )
    assert out.endswith("demo.csv")
    lines = (tmp_path / "demo.csv").read_text().splitlines()
    assert lines[0] == "# equation: azimuthal | a + b = 0"
    assert lines[1] == "q,value,ok"
    assert lines[2] == "0.5,1.25,true"
    assert lines[3] == "1.5,nan,false"


def test_write_table_json(tmp_path):
    rows = [(0.5, float("inf")), (np.float64(0.25), None)]
    out = write_table(
        str(tmp_path / "demo"), "axial", "formula \"quoted\"", ["q", "v"], rows, fmt="json"
    )
    assert out.endswith("demo.json")
    payload = json.loads((tmp_path / "demo.json").read_text())
    assert payload["equation"] == "axial"
    assert payload["formula"] == 'formula "quoted"'
    assert payload["columns"] == ["q", "v"]
    assert payload["rows"][0] == [0.5, None]  # non-finite floats become null
    assert payload["rows"][1] == [0.25, None]


def test_write_table_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError, match="format"):
        write_table(str(tmp_path / "x"), "e", "f", ["a"], [], fmt="toml")


def test_write_summary_sorted_and_parseable(tmp_path):
    path = str(tmp_path / "summary.json")
    payload = {
        "zeta": 1.0 / 3.0,
        "alpha": {"nested": [1, 2.5, True], "empty": {}},
        "list": [],
        "flag": np.bool_(False),
    }
    write_summary(path, payload)
    text = (tmp_path / "summary.json").read_text()
    parsed = json.loads(text)
    assert parsed["flag"] is False
    assert parsed["alpha"]["nested"] == [1, 2.5, True]
    assert math.isclose(parsed["zeta"], 1.0 / 3.0, rel_tol=0.0, abs_tol=0.0)
    assert text.index('"alpha"') < text.index('"flag"') < text.index('"zeta"')


def test_summary_is_byte_stable(tmp_path):
    payload = {"b": 2, "a": [1.5, {"x": float(np.pi)}]}
    p1 = str(tmp_path / "one.json")
    p2 = str(tmp_path / "two.json")
    write_summary(p1, payload)
    write_summary(p2, payload)
    assert (tmp_path / "one.json").read_bytes() == (tmp_path / "two.json").read_bytes()
