"""Data loading: generic CSV, GISS/NOAA annual anomaly tables, return conventions.

No network access; callers download source files themselves. Each parser is
total: malformed content raises ParseError with a line number rather than
propagating bare conversion errors.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .exceptions import (
    EmptyRangeError,
    MissingValueError,
    NonPositivePriceError,
    ParseError,
)
from .series import Series

__all__ = [
    "GenericCsv",
    "GissAnnual",
    "NoaaAnnual",
    "DataSourceFormat",
    "load",
    "to_returns",
    "center",
    "RETURN_CONVENTIONS",
]

RETURN_CONVENTIONS = ("log-percent", "log", "simple")

# sentinel strings the anomaly tables use for missing annual values
_MISSING_TOKENS = {"***", "****", "*****", "-99.99", "-999", "-999.0", "-9999"}


@dataclass(frozen=True)
class GenericCsv:
    """Plain CSV with one label column and one value column."""

    label_column: int = 0
    value_column: int = 1
    has_header: bool = False

    def __post_init__(self):
        if self.label_column < 0 or self.value_column < 0:
            raise ValueError("column indices must be >= 0")
        if self.label_column == self.value_column:
            raise ValueError("label and value columns must differ")


@dataclass(frozen=True)
class GissAnnual:
    """GISS-style annual anomaly table.

    Data rows start with a 4-digit year; header, comment and repeated
    column-title lines are skipped. Two-column rows are read as
    (year, anomaly); wider rows use the annual (J-D) column, field 14.
    A missing-value sentinel inside the requested year range is an error.
    """

    start_year: Optional[int] = None
    end_year: Optional[int] = None


@dataclass(frozen=True)
class NoaaAnnual:
    """NOAA-style annual anomaly table: (year, anomaly) rows after headers."""

    start_year: Optional[int] = None
    end_year: Optional[int] = None


DataSourceFormat = Union[GenericCsv, GissAnnual, NoaaAnnual]


def _iter_rows(reader):
    while True:
        try:
            row = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise ParseError(reader.line_num or 1, str(exc)) from None
        yield row


def _split_fields(line: str) -> list[str]:
    if "," in line:
        return [f.strip() for f in line.split(",")]
    return line.split()


def _parse_year(token: str) -> Optional[int]:
    if len(token) == 4 and token.isdigit():
        return int(token)
    return None


def _load_generic(path: str, fmt: GenericCsv) -> Series:
    labels: list = []
    values: list[float] = []
    needed = max(fmt.label_column, fmt.value_column) + 1
    # errors="replace" so arbitrary bytes surface as ParseError, not a decode crash
    with open(path, newline="", errors="replace") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(_iter_rows(reader), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if fmt.has_header and lineno == 1:
                continue
            if len(row) < needed:
                raise ParseError(lineno, f"expected at least {needed} columns, got {len(row)}")
            raw_label = row[fmt.label_column].strip()
            raw_value = row[fmt.value_column].strip()
            try:
                value = float(raw_value)
            except ValueError:
                raise ParseError(lineno, f"value {raw_value!r} is not a number") from None
            try:
                label: Union[int, str] = int(raw_label)
            except ValueError:
                label = raw_label
            labels.append(label)
            values.append(value)
    if not values:
        raise ParseError(1, "no data rows found")
    return Series(tuple(labels), np.array(values), unit="")


def _load_annual(path: str, fmt: Union[GissAnnual, NoaaAnnual]) -> Series:
    years: list[int] = []
    values: list[float] = []
    wide = isinstance(fmt, GissAnnual)
    with open(path, errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = _split_fields(line.strip())
            if not fields:
                continue
            year = _parse_year(fields[0])
            if year is None:
                continue  # header, comment, or repeated column-title line
            if fmt.start_year is not None and year < fmt.start_year:
                continue
            if fmt.end_year is not None and year > fmt.end_year:
                continue
            if len(fields) < 2:
                raise ParseError(lineno, "year row has no value field")
            token = fields[13] if wide and len(fields) >= 14 else fields[1]
            if token in _MISSING_TOKENS:
                raise MissingValueError(year)
            try:
                value = float(token)
            except ValueError:
                raise ParseError(lineno, f"anomaly {token!r} is not a number") from None
            years.append(year)
            values.append(value)
    if not values:
        raise EmptyRangeError("no rows inside the requested year range")
    return Series(tuple(years), np.array(values), unit="anomaly")


def load(path: str, fmt: DataSourceFormat) -> Series:
    """Parse ``path`` under the declared format and return a validated Series."""
    if isinstance(fmt, GenericCsv):
        return _load_generic(path, fmt)
    if isinstance(fmt, (GissAnnual, NoaaAnnual)):
        return _load_annual(path, fmt)
    raise TypeError(f"unsupported format {type(fmt).__name__}")


def to_returns(prices: Series, convention: str = "log-percent") -> Series:
    """Convert a price series into returns, dropping the first label.

    log-percent: 100 (log p_t - log p_{t-1}); log: the log difference;
    simple: p_t / p_{t-1} - 1. Log conventions require positive prices.
    """
    key = convention.replace("_", "-").lower()
    if key not in RETURN_CONVENTIONS:
        raise ValueError(f"unknown return convention {convention!r}")
    p = prices.values
    if key in ("log-percent", "log"):
        nonpos = np.nonzero(~(p > 0))[0]
        if nonpos.size:
            raise NonPositivePriceError(int(nonpos[0]))
        diffs = np.diff(np.log(p))
        values = 100.0 * diffs if key == "log-percent" else diffs
        unit = "percent log return" if key == "log-percent" else "log return"
    else:
        values = p[1:] / p[:-1] - 1.0
        unit = "simple return"
    return Series(prices.labels[1:], values, unit=unit)


def center(series: Series) -> Series:
    """Subtract the sample mean, keeping labels and unit."""
    return Series(series.labels, series.values - series.values.mean(), unit=series.unit)
