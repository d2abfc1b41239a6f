"""Adjusted-close price series: CSV loading, writing and date alignment."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

PathLike = Union[str, Path]

__all__ = [
    "DuplicateDate",
    "EmptyIntersection",
    "NonPositivePrice",
    "ParseError",
    "PriceDataError",
    "PricePair",
    "PriceSeries",
    "align",
    "business_days",
    "load_prices",
    "pair_from_arrays",
    "write_prices",
]


class PriceDataError(ValueError):
    pass


class ParseError(PriceDataError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonPositivePrice(ParseError):
    pass


class DuplicateDate(ParseError):
    pass


class EmptyIntersection(PriceDataError):
    pass


@dataclass(frozen=True)
class PriceSeries:
    ticker: str
    dates: tuple[date, ...]
    prices: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.dates) != len(self.prices):
            raise PriceDataError("dates and prices differ in length")
        for i in range(1, len(self.dates)):
            if self.dates[i] <= self.dates[i - 1]:
                raise PriceDataError(f"{self.ticker}: dates not strictly increasing at row {i}")
        for p in self.prices:
            if not (math.isfinite(p) and p > 0):
                raise PriceDataError(f"{self.ticker}: price {p!r} is not positive and finite")

    def __len__(self) -> int:
        return len(self.prices)

    @property
    def rows(self) -> list[tuple[date, float]]:
        return list(zip(self.dates, self.prices))


@dataclass(frozen=True)
class PricePair:
    series_a: PriceSeries
    series_b: PriceSeries

    def __post_init__(self) -> None:
        if self.series_a.dates != self.series_b.dates:
            raise PriceDataError("paired series must share an identical date vector")

    @property
    def n(self) -> int:
        return len(self.series_a)

    @property
    def dates(self) -> tuple[date, ...]:
        return self.series_a.dates


def _find_column(header: list[str], wanted: str) -> Optional[int]:
    for i, name in enumerate(header):
        if name.strip().lower() == wanted:
            return i
    return None


def load_prices(path: PathLike, ticker: Optional[str] = None) -> PriceSeries:
    """Read the ``Adj Close`` column of a ``Date,...,Adj Close,...`` CSV.

    Both the two-column layout and the full Yahoo layout
    (``Date,Open,High,Low,Close,Adj Close,Volume``) are accepted; columns are
    located by header name.  Rows are returned sorted by date.
    """
    path = Path(path)
    if ticker is None:
        ticker = path.stem
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file, header row expected", 1) from None
        date_col = _find_column(header, "date")
        price_col = _find_column(header, "adj close")
        if date_col is None or price_col is None:
            raise ParseError("header must contain 'Date' and 'Adj Close' columns", 1)

        rows: list[tuple[date, float, int]] = []
        for line_no, record in enumerate(reader, start=2):
            if not record or all(not field.strip() for field in record):
                continue
            try:
                day = date.fromisoformat(record[date_col].strip())
                price = float(record[price_col].strip())
            except (IndexError, ValueError) as exc:
                raise ParseError(str(exc) or "malformed row", line_no) from None
            if not math.isfinite(price):
                raise ParseError(f"non-finite price {record[price_col].strip()!r}", line_no)
            if price <= 0:
                raise NonPositivePrice(f"price {price!r} must be positive", line_no)
            rows.append((day, price, line_no))

    rows.sort(key=lambda r: r[0])
    for prev, cur in zip(rows, rows[1:]):
        if cur[0] == prev[0]:
            raise DuplicateDate(f"duplicate date {cur[0].isoformat()}", max(cur[2], prev[2]))
    return PriceSeries(ticker, tuple(r[0] for r in rows), tuple(r[1] for r in rows))


def write_prices(path: PathLike, series: PriceSeries) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["Date", "Adj Close"])
        for day, price in zip(series.dates, series.prices):
            writer.writerow([day.isoformat(), repr(float(price))])


def align(a: PriceSeries, b: PriceSeries) -> PricePair:
    """Restrict both series to their common dates."""
    if not len(a) or not len(b):
        raise PriceDataError("cannot align an empty series")
    common = set(a.dates).intersection(b.dates)
    if not common:
        raise EmptyIntersection(f"{a.ticker} and {b.ticker} share no dates")

    def restrict(s: PriceSeries) -> PriceSeries:
        kept = [(d, p) for d, p in zip(s.dates, s.prices) if d in common]
        return PriceSeries(s.ticker, tuple(d for d, _ in kept), tuple(p for _, p in kept))

    return PricePair(restrict(a), restrict(b))


def business_days(start: date, n: int) -> list[date]:
    """``n`` consecutive Monday-to-Friday dates beginning at or after ``start``."""
    days = []
    day = start
    while len(days) < n:
        if day.weekday() < 5:
            days.append(day)
        day += timedelta(days=1)
    return days


def pair_from_arrays(
    a: Iterable[float],
    b: Iterable[float],
    start: date = date(2019, 1, 2),
    tickers: Sequence[str] = ("A", "B"),
) -> PricePair:
    pa = tuple(float(v) for v in a)
    pb = tuple(float(v) for v in b)
    if len(pa) != len(pb):
        raise PriceDataError("price arrays differ in length")
    dates = tuple(business_days(start, len(pa)))
    return PricePair(PriceSeries(tickers[0], dates, pa), PriceSeries(tickers[1], dates, pb))
