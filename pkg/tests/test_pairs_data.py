from datetime import date

import pytest

from latencylab.pairs import (
    DuplicateDate,
    EmptyIntersection,
    NonPositivePrice,
    ParseError,
    PriceSeries,
    align,
    load_prices,
    pair_from_arrays,
    write_prices,
)
from latencylab.pairs.data import PriceDataError, PricePair, business_days


def series(ticker, days, prices):
    return PriceSeries(ticker, tuple(date(2020, 1, d) for d in days), tuple(prices))


def test_three_rows(csv_file):
    path = csv_file("GS.csv", "Date,Adj Close\n2020-01-02,10\n2020-01-03,11.5\n2020-01-06,12\n")
    s = load_prices(path)
    assert s.ticker == "GS"
    assert len(s) == 3
    assert s.prices == (10.0, 11.5, 12.0)
    assert s.dates[0] == date(2020, 1, 2)


def test_yahoo_layout_picks_adj_close(csv_file):
    text = (
        "Date,Open,High,Low,Close,Adj Close,Volume\n"
        "2020-01-02,1,2,0.5,1.5,1.25,100\n"
        "2020-01-03,1,2,0.5,1.6,1.35,100\n"
    )
    assert load_prices(csv_file("y.csv", text)).prices == (1.25, 1.35)


def test_header_case_and_whitespace(csv_file):
    path = csv_file("w.csv", " date , ADJ CLOSE \n2020-01-02 , 3\n\n2020-01-03,4\n")
    assert load_prices(path, ticker="W").prices == (3.0, 4.0)


def test_rows_sorted(csv_file):
    path = csv_file("s.csv", "Date,Adj Close\n2020-01-03,2\n2020-01-02,1\n")
    assert load_prices(path).prices == (1.0, 2.0)


def test_negative_price(csv_file):
    path = csv_file("n.csv", "Date,Adj Close\n2020-01-02,1\n2020-01-03,-1\n")
    with pytest.raises(NonPositivePrice) as err:
        load_prices(path)
    assert err.value.line == 3


def test_duplicate_date(csv_file):
    path = csv_file("d.csv", "Date,Adj Close\n2020-01-02,1\n2020-01-02,2\n")
    with pytest.raises(DuplicateDate) as err:
        load_prices(path)
    assert err.value.line == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("Date,Close\n2020-01-02,1\n", 1),
        ("Date,Adj Close\n2020-13-02,1\n", 2),
        ("Date,Adj Close\n2020-01-02,abc\n", 2),
        ("Date,Adj Close\n2020-01-02,1\n2020-01-03,nan\n", 3),
        ("Date,Adj Close\n2020-01-02\n", 2),
    ],
)
def test_parse_errors_carry_line(csv_file, text, line):
    with pytest.raises(ParseError) as err:
        load_prices(csv_file("bad.csv", text))
    assert err.value.line == line


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_prices(tmp_path / "absent.csv")


def test_round_trip(tmp_path):
    s = series("X", [2, 3, 6], [1.0 / 3.0, 2.5, 1e-7])
    path = tmp_path / "x.csv"
    write_prices(path, s)
    assert load_prices(path, ticker="X") == s


def test_series_invariants():
    with pytest.raises(PriceDataError):
        series("X", [3, 2], [1, 1])
    with pytest.raises(PriceDataError):
        series("X", [2, 3], [1, 0])
    with pytest.raises(PriceDataError):
        series("X", [2, 3], [1, float("inf")])


def test_align_identical():
    a = series("A", [2, 3, 6], [1, 2, 3])
    b = series("B", [2, 3, 6], [4, 5, 6])
    pair = align(a, b)
    assert pair.n == 3


def test_align_drops_extra_row():
    a = series("A", [2, 3, 6, 7], [1, 2, 3, 4])
    b = series("B", [2, 3, 7], [4, 5, 6])
    pair = align(a, b)
    assert pair.series_a.prices == (1, 2, 4)
    assert pair.dates == b.dates


def test_align_disjoint():
    with pytest.raises(EmptyIntersection):
        align(series("A", [2], [1]), series("B", [3], [1]))


def test_pair_requires_same_dates():
    with pytest.raises(PriceDataError):
        PricePair(series("A", [2], [1]), series("B", [3], [1]))


def test_business_days_skip_weekends():
    days = business_days(date(2024, 1, 5), 3)  # Friday
    assert days == [date(2024, 1, 5), date(2024, 1, 8), date(2024, 1, 9)]


def test_pair_from_arrays():
    pair = pair_from_arrays([1, 2], [3, 4])
    assert pair.n == 2 and pair.series_b.prices == (3.0, 4.0)
    with pytest.raises(PriceDataError):
        pair_from_arrays([1], [1, 2])
