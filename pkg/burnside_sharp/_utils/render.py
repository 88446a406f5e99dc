"""burnside_sharp._utils.render"""

from __future__ import annotations

import csv
import json
from abc import ABC, abstractmethod
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Decimal, localcontext
from enum import Enum
from typing import Iterable, Mapping, Sequence, TextIO, Union

from ..extprec import ExtReal
from ..iterable import Stream

Cell = Union[ExtReal, int, str]
Row = Mapping[str, Cell]

EXPORT_DIGITS = 30
TABLE_DIGITS = 15
_TABLE_PAGE = 1000


class OutputFormat(Enum):
    """Output formats of the command-line tables."""

    TABLE = "table"
    CSV = "csv"
    JSON = "json"


def _round(value: ExtReal, digits: int, rounding: str) -> Decimal:
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    exact = value.to_decimal()
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        return +exact


def _format(value: Decimal) -> str:
    if value.is_zero():
        return "0"
    return format(value, "g")


def to_decimal_string(value: ExtReal, digits: int = EXPORT_DIGITS) -> str:
    """
    Rounds half-even to ``digits`` significant digits.

    >>> to_decimal_string(ExtReal(0.125), 2)
    '0.12'

    :param value: The number.
    :param digits: Significant digits, >= 1.
    :return: The decimal string; "0" for zero.
    """
    return _format(_round(value, digits, ROUND_HALF_EVEN))


def truncate_decimal(value: ExtReal, digits: int) -> str:
    """
    Truncates toward zero to ``digits`` significant digits.

    :param value: The number.
    :param digits: Significant digits, >= 1.
    :return: The decimal string; "0" for zero.
    """
    return _format(_round(value, digits, ROUND_DOWN))


def _text(cell: Cell, digits: int) -> str:
    if isinstance(cell, ExtReal):
        return to_decimal_string(cell, digits)
    return str(cell)


class RowWriter(ABC):
    """
    Writes rows with a fixed set of columns to a text stream.

    :param out: The destination.
    :param columns: Column names, in output order.
    """

    digits = EXPORT_DIGITS

    def __init__(self, out: TextIO, columns: Sequence[str]):
        self._out = out
        self._columns = tuple(columns)

    def _cells(self, row: Row) -> list[str]:
        return [_text(row[column], self.digits) for column in self._columns]

    @abstractmethod
    def write(self, rows: Iterable[Row]) -> int:
        """
        Writes every row.

        :param rows: The rows; consumed lazily.
        :return: The number of rows written.
        """


class CsvWriter(RowWriter):
    """Header row, comma delimiter, LF line endings."""

    def write(self, rows: Iterable[Row]) -> int:
        writer = csv.writer(self._out, lineterminator="\n")
        writer.writerow(self._columns)
        count = 0
        for row in rows:
            writer.writerow(self._cells(row))
            count += 1
        return count


class JsonWriter(RowWriter):
    """A flat JSON array of objects, streamed one row per line."""

    def _value(self, cell: Cell) -> Union[int, str]:
        if isinstance(cell, ExtReal):
            return to_decimal_string(cell, self.digits)
        return cell

    def write(self, rows: Iterable[Row]) -> int:
        count = 0
        self._out.write("[")
        for row in rows:
            record = {column: self._value(row[column]) for column in self._columns}
            self._out.write(",\n" if count else "\n")
            self._out.write(json.dumps(record))
            count += 1
        self._out.write("\n]\n" if count else "]\n")
        return count


class TableWriter(RowWriter):
    """Right-aligned columns, realigned every thousand rows under a fresh header."""

    digits = TABLE_DIGITS

    def _page(self, cells: list[list[str]]) -> None:
        lines = [list(self._columns)] + cells
        widths = [max(len(text) for text in column) for column in zip(*lines)]
        for line in lines:
            padded = (text.rjust(width) for text, width in zip(line, widths))
            self._out.write("  ".join(padded).rstrip() + "\n")

    def write(self, rows: Iterable[Row]) -> int:
        count = 0
        for page in Stream(rows).map(self._cells).chunked(_TABLE_PAGE):
            self._page(page)
            count += len(page)
        if not count:
            self._page([])
        return count


def make_writer(fmt: OutputFormat, out: TextIO, columns: Sequence[str]) -> RowWriter:
    """
    Returns the writer for a format.

    :param fmt: The output format.
    :param out: The destination.
    :param columns: Column names, in output order.
    :return: The writer.
    """
    writers: dict[OutputFormat, type[RowWriter]] = {
        OutputFormat.TABLE: TableWriter,
        OutputFormat.CSV: CsvWriter,
        OutputFormat.JSON: JsonWriter,
    }
    return writers[fmt](out, columns)
