"""Annual macro panel ingestion, windowed statistics, and steady-window selection.

A panel is a set of year-indexed series (output, capital, labor, consumption,
investment, plus optional TFP and labor share) in one shared constant-price
unit. Units are never interpreted beyond positivity: everything downstream
works on ratios or log differences, which are unit-free.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PanelError

MANDATORY_COLUMNS = ("year", "output", "capital", "labor", "consumption", "investment")
OPTIONAL_COLUMNS = ("tfp", "labor_share")

DEFAULT_WINDOW_TOL = 0.01
DEFAULT_MIN_WINDOW_LEN = 8


@dataclass(frozen=True)
class YearRange:
    """Inclusive span of calendar years, e.g. YearRange(1960, 1969)."""

    start: int
    end: int

    def __post_init__(self):
        if self.end < self.start:
            raise PanelError(
                "bad_range", f"year range start {self.start} is after end {self.end}"
            )

    @classmethod
    def parse(cls, text: str) -> "YearRange":
        """Parse the ``START:END`` flag syntax."""
        parts = text.split(":")
        if len(parts) != 2:
            raise PanelError("bad_range", f"expected START:END, got {text!r}")
        try:
            start, end = int(parts[0]), int(parts[1])
        except ValueError:
            raise PanelError("bad_range", f"non-integer year in range {text!r}") from None
        return cls(start, end)

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def __str__(self) -> str:
        return f"{self.start}:{self.end}"


@dataclass(frozen=True)
class WindowStats:
    """Mean and population standard deviation of a series over one window."""

    range: YearRange
    mean: float
    std: float


@dataclass(frozen=True)
class MacroPanel:
    """Year-indexed annual series in consistent constant-price units.

    Years must be strictly consecutive; every mandatory series must be
    positive and finite for every year. ``tfp`` and ``labor_share`` are
    optional columns.
    """

    years: np.ndarray
    output: np.ndarray
    capital: np.ndarray
    labor: np.ndarray
    consumption: np.ndarray
    investment: np.ndarray
    tfp: np.ndarray | None = None
    labor_share: np.ndarray | None = None

    def __post_init__(self):
        years = np.asarray(self.years, dtype=int)
        object.__setattr__(self, "years", years)
        if years.size < 2:
            raise PanelError("too_short", "panel needs at least 2 years")
        gaps = np.diff(years)
        if np.any(gaps != 1):
            i = int(np.argmax(gaps != 1))
            if gaps[i] == 0:
                raise PanelError("duplicate_year", f"duplicate year {years[i]}")
            raise PanelError(
                "gapped_year",
                f"years are not consecutive: missing year {years[i] + 1} "
                f"between {years[i]} and {years[i + 1]}",
            )
        for name in ("output", "capital", "labor", "consumption", "investment", "tfp"):
            values = getattr(self, name)
            if values is None:
                continue
            values = np.asarray(values, dtype=float)
            object.__setattr__(self, name, values)
            if values.shape != years.shape:
                raise PanelError("length_mismatch", f"series {name!r} does not match years")
            if not np.all(np.isfinite(values)):
                raise PanelError("non_finite", f"series {name!r} contains non-finite values")
            if np.any(values <= 0):
                raise PanelError("non_positive", f"series {name!r} contains non-positive values")
        if self.labor_share is not None:
            share = np.asarray(self.labor_share, dtype=float)
            object.__setattr__(self, "labor_share", share)
            if share.shape != years.shape:
                raise PanelError("length_mismatch", "series 'labor_share' does not match years")
            if not np.all(np.isfinite(share)) or np.any(share <= 0) or np.any(share >= 1):
                raise PanelError("out_of_range", "labor_share values must lie strictly in (0, 1)")

    @property
    def span(self) -> YearRange:
        return YearRange(int(self.years[0]), int(self.years[-1]))

    def series(self, name: str) -> np.ndarray:
        """Look up a series by its CSV column name."""
        if name not in MANDATORY_COLUMNS + OPTIONAL_COLUMNS or name == "year":
            raise PanelError("unknown_series", f"unknown series {name!r}")
        values = getattr(self, name)
        if values is None:
            raise PanelError("missing_series", f"panel has no {name!r} column")
        return values

    def locate(self, rng: YearRange) -> slice:
        """Slice of the panel arrays covering ``rng``; rejects out-of-span ranges."""
        span = self.span
        if rng.start < span.start or rng.end > span.end:
            raise PanelError(
                "window_out_of_span",
                f"window {rng} outside panel span {span}",
                location={"start": rng.start, "end": rng.end},
            )
        first = int(self.years[0])
        return slice(rng.start - first, rng.end - first + 1)


def _parse_year(cell: str, row: int) -> int:
    try:
        return int(cell.strip())
    except ValueError:
        raise PanelError(
            "non_numeric",
            f"year cell {cell!r} is not an integer",
            location={"row": row, "column": "year"},
        ) from None


def _parse_value(cell: str, row: int, column: str) -> float:
    try:
        value = float(cell.strip())
    except ValueError:
        raise PanelError(
            "non_numeric",
            f"cell {cell!r} is not a number",
            location={"row": row, "column": column},
        ) from None
    if not math.isfinite(value):
        raise PanelError(
            "non_finite", f"cell {cell!r} is not finite", location={"row": row, "column": column}
        )
    if value <= 0:
        raise PanelError(
            "non_positive",
            f"{column} must be positive, got {value}",
            location={"row": row, "column": column},
        )
    if column == "labor_share" and value >= 1:
        raise PanelError(
            "out_of_range",
            f"labor_share must lie in (0, 1), got {value}",
            location={"row": row, "column": column},
        )
    return value


def parse_panel(csv_text: str) -> MacroPanel:
    """Parse a UTF-8 comma-separated panel with a header row.

    Mandatory columns: year, output, capital, labor, consumption, investment.
    Optional columns: tfp, labor_share. Column order is irrelevant and extra
    columns are ignored. Rows may arrive unsorted; years must form one
    consecutive run once sorted.
    """
    rows = [row for row in csv.reader(io.StringIO(csv_text))]
    rows = [(i + 1, row) for i, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not rows:
        raise PanelError("empty_input", "no CSV content found")
    header = [cell.strip() for cell in rows[0][1]]
    for name in MANDATORY_COLUMNS:
        if name not in header:
            raise PanelError(
                "missing_column",
                f"mandatory column {name!r} not found in header",
                location={"row": 1, "column": name},
            )
    columns = list(MANDATORY_COLUMNS) + [c for c in OPTIONAL_COLUMNS if c in header]
    index = {name: header.index(name) for name in columns}

    records = []
    for lineno, row in rows[1:]:
        record: dict = {"_row": lineno}
        for name in columns:
            pos = index[name]
            if pos >= len(row) or not row[pos].strip():
                raise PanelError(
                    "missing_cell",
                    f"row has no value for column {name!r}",
                    location={"row": lineno, "column": name},
                )
            cell = row[pos]
            record[name] = (
                _parse_year(cell, lineno) if name == "year" else _parse_value(cell, lineno, name)
            )
        records.append(record)

    if len(records) < 2:
        raise PanelError("too_short", "panel needs at least 2 rows of data")
    records.sort(key=lambda r: r["year"])
    for prev, cur in zip(records, records[1:]):
        if cur["year"] == prev["year"]:
            raise PanelError(
                "duplicate_year",
                f"duplicate year {cur['year']}",
                location={"row": cur["_row"], "column": "year"},
            )
        if cur["year"] != prev["year"] + 1:
            raise PanelError(
                "gapped_year",
                f"missing year {prev['year'] + 1} between {prev['year']} and {cur['year']}",
                location={"row": cur["_row"], "column": "year"},
            )

    def col(name: str):
        return np.array([r[name] for r in records])

    return MacroPanel(
        years=col("year"),
        output=col("output"),
        capital=col("capital"),
        labor=col("labor"),
        consumption=col("consumption"),
        investment=col("investment"),
        tfp=col("tfp") if "tfp" in columns else None,
        labor_share=col("labor_share") if "labor_share" in columns else None,
    )


def serialize_panel(panel: MacroPanel) -> str:
    """Render a panel back to CSV text; inverse of :func:`parse_panel`."""
    columns = list(MANDATORY_COLUMNS)
    if panel.tfp is not None:
        columns.append("tfp")
    if panel.labor_share is not None:
        columns.append("labor_share")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for i, year in enumerate(panel.years):
        row = [str(int(year))]
        for name in columns[1:]:
            row.append(repr(float(getattr(panel, name)[i])))
        writer.writerow(row)
    return out.getvalue()


def window_stats(
    years: np.ndarray, values: np.ndarray, windows: Sequence[YearRange]
) -> list[WindowStats]:
    """Mean and population standard deviation of a year-indexed series per window.

    Output order follows input order. Population (not sample) standard
    deviation, matching descriptive decade tables.
    """
    years = np.asarray(years, dtype=int)
    values = np.asarray(values, dtype=float)
    if years.shape != values.shape:
        raise PanelError("length_mismatch", "years and values must have equal length")
    first, last = int(years[0]), int(years[-1])
    results = []
    for window in windows:
        if window.start < first or window.end > last:
            raise PanelError(
                "window_out_of_span",
                f"window {window} outside series span {first}:{last}",
                location={"start": window.start, "end": window.end},
            )
        chunk = values[window.start - first : window.end - first + 1]
        results.append(
            WindowStats(range=window, mean=float(chunk.mean()), std=float(chunk.std(ddof=0)))
        )
    return results


def mean_growth_gap(panel: MacroPanel, window: YearRange) -> float:
    """Mean absolute gap between annual log growth of consumption and of output."""
    sl = panel.locate(window)
    if window.length < 2:
        raise PanelError("bad_range", f"window {window} too short to compare growth rates")
    gy = np.diff(np.log(panel.output[sl]))
    gc = np.diff(np.log(panel.consumption[sl]))
    return float(np.abs(gc - gy).mean())


def select_steady_window(
    panel: MacroPanel,
    min_len: int = DEFAULT_MIN_WINDOW_LEN,
    tol: float = DEFAULT_WINDOW_TOL,
) -> list[YearRange]:
    """Windows where consumption and output grow at (nearly) the same rate.

    Returns every maximal window of at least ``min_len`` years whose mean
    absolute consumption/output log-growth gap is at most ``tol``. A window is
    maximal when it is not strictly contained in another qualifying window.
    Sorted by gap ascending, then by length descending, then by start year.
    """
    if min_len < 2:
        raise PanelError("bad_param", f"min_len must be at least 2, got {min_len}")
    if tol <= 0:
        raise PanelError("bad_param", f"tol must be positive, got {tol}")
    gap = np.abs(np.diff(np.log(panel.consumption)) - np.diff(np.log(panel.output)))
    n = panel.years.size
    qualifying: list[tuple[int, int, float]] = []
    for a in range(n):
        for b in range(a + min_len - 1, n):
            mean = float(gap[a:b].mean())
            if mean <= tol:
                qualifying.append((a, b, mean))
    if not qualifying:
        return []

    # Containment filter: (a, b) is dominated iff some qualifying window with
    # start <= a ends strictly after b, or one with end >= b starts strictly
    # before a.
    max_end_by_start = np.full(n, -1)
    min_start_by_end = np.full(n, n)
    for a, b, _ in qualifying:
        max_end_by_start[a] = max(max_end_by_start[a], b)
        min_start_by_end[b] = min(min_start_by_end[b], a)
    max_end_upto = np.maximum.accumulate(max_end_by_start)
    min_start_from = np.minimum.accumulate(min_start_by_end[::-1])[::-1]

    maximal = [
        (a, b, mean)
        for a, b, mean in qualifying
        if not (max_end_upto[a] > b or min_start_from[b] < a)
    ]
    maximal.sort(key=lambda item: (item[2], -(item[1] - item[0]), item[0]))
    first = int(panel.years[0])
    return [YearRange(first + a, first + b) for a, b, _ in maximal]
