# pylint: disable=missing-module-docstring,missing-function-docstring

import io
import json

import pytest

from burnside_sharp import ExtReal
from burnside_sharp._utils.render import (
    CsvWriter,
    JsonWriter,
    OutputFormat,
    Row,
    RowWriter,
    TableWriter,
    make_writer,
    to_decimal_string,
    truncate_decimal,
)

ROWS: list[Row] = [
    {"n": 1, "value": ExtReal(0.125), "status": "strict-pass"},
    {"n": 20, "value": ExtReal(-2.5), "status": "fail"},
]


def test_to_decimal_string() -> None:
    assert to_decimal_string(ExtReal(0.125), 2) == "0.12"
    assert to_decimal_string(ExtReal(0.375), 2) == "0.38"
    assert to_decimal_string(ExtReal(0.0)) == "0"
    assert to_decimal_string(ExtReal(1.0, 1e-20), 21) == "1.00000000000000000001"
    assert to_decimal_string(ExtReal(1e-40), 3) == "1.00e-40"
    with pytest.raises(ValueError):
        to_decimal_string(ExtReal(1.0), 0)


def test_truncate_decimal() -> None:
    assert truncate_decimal(ExtReal(0.4288), 1) == "0.4"
    assert truncate_decimal(ExtReal(0.4288), 3) == "0.428"
    assert truncate_decimal(ExtReal(-0.4288), 2) == "-0.42"


def test_csv_writer() -> None:
    out = io.StringIO()
    assert CsvWriter(out, ["n", "value", "status"]).write(ROWS) == 2
    assert out.getvalue() == (
        "n,value,status\n"
        "1,0.125,strict-pass\n"
        "20,-2.5,fail\n"
    )


def test_json_writer() -> None:
    out = io.StringIO()
    JsonWriter(out, ["n", "value"]).write(ROWS)
    assert json.loads(out.getvalue()) == [
        {"n": 1, "value": "0.125"},
        {"n": 20, "value": "-2.5"},
    ]


def test_json_writer_empty() -> None:
    out = io.StringIO()
    assert JsonWriter(out, ["n"]).write([]) == 0
    assert json.loads(out.getvalue()) == []


def test_table_writer() -> None:
    out = io.StringIO()
    TableWriter(out, ["n", "value", "status"]).write(ROWS)
    lines = out.getvalue().splitlines()
    assert lines[0].split() == ["n", "value", "status"]
    assert lines[2].split() == ["20", "-2.5", "fail"]
    assert len({len(line) for line in lines}) == 1


def test_make_writer() -> None:
    out = io.StringIO()
    assert isinstance(make_writer(OutputFormat.CSV, out, ["n"]), CsvWriter)
    assert isinstance(make_writer(OutputFormat.JSON, out, ["n"]), JsonWriter)
    assert isinstance(make_writer(OutputFormat.TABLE, out, ["n"]), TableWriter)


def test_row_writer_needs_a_format() -> None:
    with pytest.raises(TypeError):
        RowWriter(io.StringIO(), ["n"])  # type: ignore[abstract]
