"""
Price series ingestion and reduction to return signs.

Rows of a CSV file are treated as consecutive, uniformly spaced samples.
Timestamps, when present, are carried along as metadata and never used
for resampling or gap handling.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, TextIO, Union

import numpy as np

_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class SeriesError(ValueError):
    """Raised for malformed or unusable price input."""


@dataclass(frozen=True)
class PricePoint:
    index: int
    price: float
    timestamp: Optional[float] = None


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """
    Ordered, uniformly sampled price quotes.

    Prices are stored as a read-only float64 array; sample ``i`` has index
    ``i``. ``sample_interval`` is the declared spacing between samples and
    is metadata only.
    """

    prices: np.ndarray
    timestamps: Optional[np.ndarray] = None
    sample_interval: float = 1.0

    def __post_init__(self):
        prices = np.array(self.prices, dtype=np.float64)
        if prices.ndim != 1:
            raise SeriesError("prices must be one-dimensional")
        if not np.all(np.isfinite(prices)):
            raise SeriesError("prices must be finite")
        bad = np.flatnonzero(prices <= 0)
        if bad.size:
            raise SeriesError(f"non-positive price at sample {int(bad[0])}")
        prices.setflags(write=False)
        object.__setattr__(self, "prices", prices)
        if self.timestamps is not None:
            ts = np.array(self.timestamps, dtype=np.float64)
            if ts.shape != prices.shape:
                raise SeriesError("timestamps and prices differ in length")
            ts.setflags(write=False)
            object.__setattr__(self, "timestamps", ts)

    def __len__(self) -> int:
        return self.prices.size

    def __eq__(self, other):
        if not isinstance(other, PriceSeries):
            return NotImplemented
        same_ts = (self.timestamps is None and other.timestamps is None) or (
            self.timestamps is not None
            and other.timestamps is not None
            and np.array_equal(self.timestamps, other.timestamps)
        )
        return (
            np.array_equal(self.prices, other.prices)
            and same_ts
            and self.sample_interval == other.sample_interval
        )

    @property
    def points(self) -> list[PricePoint]:
        return list(self.iter_points())

    def iter_points(self) -> Iterator[PricePoint]:
        for i, p in enumerate(self.prices):
            ts = None if self.timestamps is None else float(self.timestamps[i])
            yield PricePoint(i, float(p), ts)


@dataclass(frozen=True, eq=False)
class SignSequence:
    """Signs of one-step returns: +1 up, -1 down, 0 unchanged."""

    signs: np.ndarray
    source_length: int

    def __post_init__(self):
        signs = np.array(self.signs, dtype=np.int8)
        if signs.ndim != 1:
            raise ValueError("signs must be one-dimensional")
        if not np.all(np.isin(signs, (-1, 0, 1))):
            raise ValueError("signs must take values in {-1, 0, +1}")
        if signs.size != self.source_length - 1:
            raise ValueError("sign count must equal source_length - 1")
        signs.setflags(write=False)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_signs(cls, signs) -> "SignSequence":
        signs = np.asarray(signs)
        return cls(signs, signs.size + 1)

    def __len__(self) -> int:
        return self.signs.size

    def __eq__(self, other):
        if not isinstance(other, SignSequence):
            return NotImplemented
        return self.source_length == other.source_length and np.array_equal(
            self.signs, other.signs
        )

    def flipped(self) -> "SignSequence":
        """Global sign flip, +1 <-> -1."""
        return SignSequence(-self.signs, self.source_length)

    def counts(self) -> dict[int, int]:
        return {s: int(np.count_nonzero(self.signs == s)) for s in (1, -1, 0)}


def _parse_price(text: str, row: int) -> float:
    text = text.strip()
    if not _DECIMAL.fullmatch(text):
        raise SeriesError(f"row {row}: cannot parse price {text!r}")
    value = float(text)
    if not np.isfinite(value):
        raise SeriesError(f"row {row}: price {text!r} is not finite")
    if value <= 0:
        raise SeriesError(f"row {row}: non-positive price {text!r}")
    return value


def _resolve_column(selector: Union[int, str], header: Optional[list[str]]) -> int:
    if isinstance(selector, int):
        if selector < 0:
            raise SeriesError("column index must be >= 0")
        return selector
    if selector.isdigit():
        return int(selector)
    if header is None:
        raise SeriesError(f"column {selector!r} selected by name but file has no header")
    names = [h.strip() for h in header]
    if selector not in names:
        raise SeriesError(f"column {selector!r} not found in header")
    return names.index(selector)


def read_csv(
    stream: TextIO,
    price_column: Union[int, str] = 0,
    has_header: bool = False,
    delimiter: str = ",",
    timestamp_column: Union[int, str, None] = None,
    sample_interval: float = 1.0,
) -> PriceSeries:
    """Parse an already-open text stream; see :func:`parse_csv`."""
    reader = csv.reader(stream, delimiter=delimiter)
    header = None
    row_no = 0
    if has_header:
        header = next(reader, None)
        row_no = 1
        if header is None:
            raise SeriesError("empty file")
    pcol = _resolve_column(price_column, header)
    tcol = None if timestamp_column is None else _resolve_column(timestamp_column, header)

    prices: list[float] = []
    stamps: list[float] = []
    for fields in reader:
        row_no += 1
        if not fields or all(not f.strip() for f in fields):
            continue
        if pcol >= len(fields):
            raise SeriesError(f"row {row_no}: missing price column {pcol}")
        prices.append(_parse_price(fields[pcol], row_no))
        if tcol is not None:
            if tcol >= len(fields):
                raise SeriesError(f"row {row_no}: missing timestamp column {tcol}")
            try:
                stamps.append(float(fields[tcol]))
            except ValueError:
                raise SeriesError(
                    f"row {row_no}: cannot parse timestamp {fields[tcol]!r}"
                ) from None
    if not prices:
        raise SeriesError("empty file")
    return PriceSeries(
        np.array(prices),
        np.array(stamps) if tcol is not None else None,
        sample_interval,
    )


def parse_csv(
    path: Union[str, Path],
    price_column: Union[int, str] = 0,
    has_header: bool = False,
    delimiter: str = ",",
    timestamp_column: Union[int, str, None] = None,
    sample_interval: float = 1.0,
) -> PriceSeries:
    """
    Read a price series from a UTF-8 CSV file, one sample per row.

    Parameters
    ----------
    path : str or Path
        File to read.
    price_column : int or str
        Zero-based column index, or a header name when ``has_header``.
    has_header : bool
        Skip (and use for name lookup) the first row.
    delimiter : str
        Field separator.
    timestamp_column : int or str, optional
        Column holding epoch seconds, kept as metadata.
    sample_interval : float
        Declared sample spacing, stored on the series.

    Raises
    ------
    FileNotFoundError
        If ``path`` does not exist.
    SeriesError
        On empty input, or a row whose price is unparseable or non-positive.
        The message names the 1-based row number.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    with io.open(path, "r", encoding="utf-8", newline="") as fh:
        return read_csv(fh, price_column, has_header, delimiter, timestamp_column, sample_interval)


def compute_signs(series: PriceSeries) -> SignSequence:
    """Sign of ``y(t) - y(t-1)`` for every consecutive pair; exact ties give 0."""
    if len(series) < 2:
        raise SeriesError("need at least 2 samples to form a return")
    signs = np.sign(np.diff(series.prices)).astype(np.int8)
    return SignSequence(signs, len(series))
