"""UV ingestion and threshold labeling tests."""

import io
from datetime import datetime, timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunshade import groundtruth
from sunshade.errors import MissingHeaderError
from sunshade.groundtruth import (SunShadeLabel, UvSample, label,
                                  minute_labels, minute_uvi, parse_uv_csv)


def uv_csv(rows: str) -> io.StringIO:
    return io.StringIO("timestamp,uva,uvb,uvi\n" + rows)


def sample(ts: str, uvi: float) -> UvSample:
    when = datetime.fromisoformat(ts).replace(tzinfo=timezone.utc)
    return UvSample(timestamp_utc=when, uva=uvi * 24, uvb=uvi * 1.6,
                    uvi=uvi)


class TestParseUvCsv:
    def test_three_rows(self):
        samples, skipped = parse_uv_csv(uv_csv(
            "2021-09-21T06:30:00Z,10.0,0.7,0.41\n"
            "2021-09-21T06:30:01Z,10.1,0.7,0.42\n"
            "2021-09-21T06:30:02Z,10.2,0.7,0.43\n"))
        assert len(samples) == 3 and skipped == 0
        assert samples[0].uvi == 0.41
        assert samples[0].timestamp_utc.tzinfo is not None

    def test_nan_uvi_skipped_and_counted(self):
        samples, skipped = parse_uv_csv(uv_csv(
            "2021-09-21T06:30:00Z,10.0,0.7,NaN\n"
            "2021-09-21T06:30:01Z,10.0,0.7,0.40\n"))
        assert len(samples) == 1 and skipped == 1

    def test_bad_timestamp_skipped(self):
        samples, skipped = parse_uv_csv(uv_csv(
            "yesterday,10.0,0.7,0.40\n"))
        assert samples == [] and skipped == 1

    def test_negative_uvi_skipped(self):
        samples, skipped = parse_uv_csv(uv_csv(
            "2021-09-21T06:30:00Z,10.0,0.7,-0.1\n"))
        assert samples == [] and skipped == 1

    def test_missing_header(self):
        with pytest.raises(MissingHeaderError):
            parse_uv_csv(io.StringIO("2021-09-21T06:30:00Z,1,1,0.4\n"))
        with pytest.raises(MissingHeaderError):
            parse_uv_csv(io.StringIO(""))

    def test_clock_offset_applied(self):
        samples, _ = parse_uv_csv(
            uv_csv("2021-09-21T06:30:00Z,10.0,0.7,0.4\n"),
            clock_offset_s=90.0)
        assert samples[0].timestamp_utc == datetime(
            2021, 9, 21, 6, 31, 30, tzinfo=timezone.utc)


class TestMinuteUvi:
    def test_mean_of_two(self):
        m = minute_uvi([sample("2021-09-21T06:30:10", 0.2),
                        sample("2021-09-21T06:30:40", 0.4)])
        key = datetime(2021, 9, 21, 6, 30, tzinfo=timezone.utc)
        assert m == {key: pytest.approx(0.3)}

    def test_single_sample_identity(self):
        m = minute_uvi([sample("2021-09-21T06:30:10", 1.7)])
        assert list(m.values()) == [pytest.approx(1.7)]

    def test_empty_minute_absent(self):
        m = minute_uvi([sample("2021-09-21T06:30:10", 0.2)])
        assert datetime(2021, 9, 21, 6, 31,
                        tzinfo=timezone.utc) not in m

    @given(st.lists(st.floats(0.0, 12.0), min_size=1, max_size=50))
    def test_mean_within_minmax(self, uvis):
        samples = [sample(f"2021-09-21T06:30:{i % 60:02d}", v)
                   for i, v in enumerate(uvis)]
        for v in minute_uvi(samples).values():
            assert min(uvis) - 1e-9 <= v <= max(uvis) + 1e-9


class TestLabel:
    @pytest.mark.parametrize("uvi,expected", [
        (0.34, SunShadeLabel.SHADE),
        (0.36, SunShadeLabel.SUN),
        (0.35, SunShadeLabel.SUN),  # boundary belongs to Sun
        (0.0, SunShadeLabel.SHADE),
    ])
    def test_threshold_cases(self, uvi, expected):
        assert label(uvi) is expected

    def test_custom_threshold(self):
        assert label(0.4, threshold=0.5) is SunShadeLabel.SHADE

    @given(st.floats(0.0, 12.0), st.floats(0.0, 12.0))
    def test_step_function_monotone(self, a, b):
        lo, hi = sorted((a, b))
        if label(hi) is SunShadeLabel.SHADE:
            assert label(lo) is SunShadeLabel.SHADE

    def test_minute_labels_composition(self):
        labels = minute_labels([sample("2021-09-21T06:30:00", 0.30),
                                sample("2021-09-21T06:30:30", 0.36),
                                sample("2021-09-21T06:31:00", 0.36)])
        key0 = datetime(2021, 9, 21, 6, 30, tzinfo=timezone.utc)
        key1 = datetime(2021, 9, 21, 6, 31, tzinfo=timezone.utc)
        assert labels[key0] is SunShadeLabel.SHADE  # mean 0.33
        assert labels[key1] is SunShadeLabel.SUN
