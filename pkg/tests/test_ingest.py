from pathlib import Path

import numpy as np
import pytest

from horizonmatch.exceptions import (
    EmptyRangeError,
    MissingValueError,
    NonPositivePriceError,
    ParseError,
)
from horizonmatch.ingest import (
    RETURN_CONVENTIONS,
    GenericCsv,
    GissAnnual,
    NoaaAnnual,
    center,
    load,
    to_returns,
)
from horizonmatch.series import Series

FIXTURES = Path(__file__).parent / "fixtures"


class TestGenericCsv:
    def test_prices_fixture(self):
        s = load(FIXTURES / "prices.csv", GenericCsv())
        assert s.labels == tuple(range(1, 11))
        np.testing.assert_allclose(
            s.values, [100.0, 101.0, 100.5, 102.2, 101.7, 103.1, 102.6, 104.0, 103.2, 104.8]
        )

    def test_header_skipped(self, tmp_path):
        p = tmp_path / "h.csv"
        p.write_text("date,close\n2020,1.5\n2021,2.5\n")
        s = load(p, GenericCsv(has_header=True))
        assert s.labels == (2020, 2021)
        np.testing.assert_array_equal(s.values, [1.5, 2.5])

    def test_custom_columns(self, tmp_path):
        p = tmp_path / "wide.csv"
        p.write_text("x,10,1.0\nx,20,2.0\n")
        s = load(p, GenericCsv(label_column=1, value_column=2))
        assert s.labels == (10, 20)

    def test_non_numeric_labels_kept_as_strings(self, tmp_path):
        p = tmp_path / "s.csv"
        p.write_text("2020Q1,1.0\n2020Q2,2.0\n")
        s = load(p, GenericCsv())
        assert s.labels == ("2020Q1", "2020Q2")

    def test_blank_lines_ignored(self, tmp_path):
        p = tmp_path / "b.csv"
        p.write_text("1,1.0\n\n2,2.0\n")
        assert len(load(p, GenericCsv())) == 2

    def test_parse_error_reports_line(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("1,1.0\n2,abc\n")
        with pytest.raises(ParseError) as err:
            load(p, GenericCsv())
        assert err.value.line == 2
        assert "abc" in str(err.value)

    def test_short_row(self, tmp_path):
        p = tmp_path / "short.csv"
        p.write_text("1,1.0\n2\n")
        with pytest.raises(ParseError) as err:
            load(p, GenericCsv())
        assert err.value.line == 2

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        with pytest.raises(ParseError):
            load(p, GenericCsv())

    def test_binary_garbage_is_parse_error(self, tmp_path):
        p = tmp_path / "junk.csv"
        p.write_bytes(b"\x00\xff\xfe\x00,1.0\n\x00")
        with pytest.raises(ParseError):
            load(p, GenericCsv())

    def test_format_validation(self):
        with pytest.raises(ValueError):
            GenericCsv(label_column=1, value_column=1)
        with pytest.raises(ValueError):
            GenericCsv(label_column=-1)

    def test_unknown_format_type(self):
        with pytest.raises(TypeError):
            load(FIXTURES / "prices.csv", "csv")


class TestGissAnnual:
    def test_wide_table_uses_annual_column(self):
        s = load(FIXTURES / "giss_sample.txt", GissAnnual(1880, 1882))
        assert s.labels == (1880, 1881, 1882)
        np.testing.assert_array_equal(s.values, [-20.0, -12.0, -11.0])
        assert s.unit == "anomaly"

    def test_repeated_column_titles_skipped(self, tmp_path):
        # the fixture repeats its column-title row mid-file; rows after it must
        # still load (drop the sentinel 1883 row so the range can span it)
        lines = (FIXTURES / "giss_sample.txt").read_text().splitlines(keepends=True)
        trimmed = tmp_path / "giss.txt"
        trimmed.write_text("".join(ln for ln in lines if not ln.startswith("1883")))
        s = load(trimmed, GissAnnual(1880, 1884))
        assert s.labels == (1880, 1881, 1882, 1884)
        assert s.values[-1] == -29.0

    def test_sentinel_inside_range_is_missing_value(self):
        with pytest.raises(MissingValueError) as err:
            load(FIXTURES / "giss_sample.txt", GissAnnual(1880, 1884))
        assert err.value.year == 1883

    def test_sentinel_outside_range_is_fine(self):
        s = load(FIXTURES / "giss_sample.txt", GissAnnual(1880, 1882))
        assert len(s) == 3

    def test_empty_range(self):
        with pytest.raises(EmptyRangeError):
            load(FIXTURES / "giss_sample.txt", GissAnnual(1990, 1995))

    def test_open_ended_range_hits_sentinel(self):
        with pytest.raises(MissingValueError):
            load(FIXTURES / "giss_sample.txt", GissAnnual())

    def test_binary_garbage_yields_empty_range(self, tmp_path):
        p = tmp_path / "junk.bin"
        p.write_bytes(bytes(range(256)))
        with pytest.raises(EmptyRangeError):
            load(p, GissAnnual())


class TestNoaaAnnual:
    def test_csv_table(self):
        s = load(FIXTURES / "noaa_sample.csv", NoaaAnnual())
        assert s.labels == (1880, 1881, 1882, 1883, 1884, 1885)
        np.testing.assert_array_equal(s.values, [-0.12, -0.07, -0.08, -0.15, -0.22, -0.21])

    def test_year_range(self):
        s = load(FIXTURES / "noaa_sample.csv", NoaaAnnual(1881, 1883))
        assert s.labels == (1881, 1882, 1883)

    def test_empty_range(self):
        with pytest.raises(EmptyRangeError):
            load(FIXTURES / "noaa_sample.csv", NoaaAnnual(2050, 2060))


class TestToReturns:
    def test_conventions_tuple(self):
        assert RETURN_CONVENTIONS == ("log-percent", "log", "simple")

    def test_log_percent(self):
        prices = Series.from_values([100.0, 101.0, 99.0], labels=[1, 2, 3])
        r = to_returns(prices)
        assert r.labels == (2, 3)
        np.testing.assert_allclose(
            r.values, [100 * np.log(101 / 100), 100 * np.log(99 / 101)], rtol=1e-11
        )
        assert r.values[0] == pytest.approx(0.9950330853155723)
        assert r.unit == "percent log return"

    def test_log(self):
        prices = Series.from_values([100.0, 101.0, 102.01])
        r = to_returns(prices, "log")
        np.testing.assert_allclose(r.values, np.log(1.01), rtol=1e-11)
        assert r.unit == "log return"

    def test_simple(self):
        prices = Series.from_values([100.0, 110.0, 99.0])
        r = to_returns(prices, "simple")
        np.testing.assert_allclose(r.values, [0.10, -0.10], rtol=1e-12)
        assert r.unit == "simple return"

    def test_underscore_alias(self):
        prices = Series.from_values([1.0, 2.0, 4.0])
        np.testing.assert_array_equal(
            to_returns(prices, "log_percent").values, to_returns(prices, "log-percent").values
        )

    def test_two_prices_cannot_make_a_series(self):
        # a returns series inherits the 2-observation minimum
        from horizonmatch.exceptions import TooShortError

        with pytest.raises(TooShortError):
            to_returns(Series.from_values([1.0, 2.0]))

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            to_returns(Series.from_values([1.0, 2.0]), "arithmetic")

    def test_non_positive_price_reports_first_offender(self):
        prices = Series.from_values([100.0, -1.0, 50.0, 0.0])
        with pytest.raises(NonPositivePriceError) as err:
            to_returns(prices)
        assert err.value.index == 1

    def test_simple_allows_negative_prices(self):
        r = to_returns(Series.from_values([2.0, -1.0, -2.0]), "simple")
        np.testing.assert_allclose(r.values, [-1.5, 1.0])

    def test_round_trip_reconstruction(self):
        s = load(FIXTURES / "prices.csv", GenericCsv())
        r = to_returns(s, "log-percent")
        rebuilt = s.values[0] * np.exp(np.cumsum(r.values / 100.0))
        np.testing.assert_allclose(rebuilt, s.values[1:], rtol=1e-10)


class TestCenter:
    def test_zero_mean_and_metadata(self):
        s = Series((1, 2, 3), np.array([1.0, 2.0, 6.0]), unit="anomaly")
        c = center(s)
        assert c.values.mean() == pytest.approx(0.0, abs=1e-15)
        np.testing.assert_allclose(c.values, [-2.0, -1.0, 3.0])
        assert c.labels == s.labels
        assert c.unit == "anomaly"
