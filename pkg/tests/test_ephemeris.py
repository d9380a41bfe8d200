"""Solar position tests against the frozen independent-ephemeris fixture
(tests/fixtures/solar_oracle.csv) plus analytic sanity properties."""

import csv
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sunshade.ephemeris import (RangeError, julian_day, solar_position,
                                solar_positions)

FIXTURE = Path(__file__).parent / "fixtures" / "solar_oracle.csv"


def load_oracle():
    with FIXTURE.open() as fh:
        for row in csv.DictReader(fh):
            when = datetime.strptime(
                row["utc_iso8601"], "%Y-%m-%dT%H:%M:%SZ").replace(
                tzinfo=timezone.utc)
            yield (float(row["lat"]), float(row["lon"]), when,
                   float(row["azimuth_deg"]), float(row["elevation_deg"]))


def azimuth_diff(a, b):
    return abs((a - b + 180.0) % 360.0 - 180.0)


class TestJulianDay:
    def test_j2000_epoch(self):
        assert julian_day(datetime(2000, 1, 1, 12,
                                   tzinfo=timezone.utc)) == 2451545.0

    def test_one_day_linearity(self):
        t = datetime(2021, 9, 21, 6, 30, tzinfo=timezone.utc)
        assert julian_day(t + timedelta(days=1)) - julian_day(t) \
            == pytest.approx(1.0, abs=1e-9)

    def test_one_hour_linearity(self):
        t = datetime(2021, 9, 21, 6, 30, tzinfo=timezone.utc)
        assert julian_day(t + timedelta(hours=1)) - julian_day(t) \
            == pytest.approx(1.0 / 24.0, abs=1e-9)

    def test_naive_treated_as_utc(self):
        aware = datetime(2021, 9, 21, 6, 30, tzinfo=timezone.utc)
        assert julian_day(aware.replace(tzinfo=None)) == julian_day(aware)

    def test_out_of_range_year(self):
        with pytest.raises(RangeError):
            julian_day(datetime(1949, 12, 31, tzinfo=timezone.utc))
        with pytest.raises(RangeError):
            julian_day(datetime(2051, 1, 1, tzinfo=timezone.utc))


class TestOracleFixture:
    def test_hundred_point_tolerance(self):
        rows = list(load_oracle())
        assert len(rows) == 100
        for lat, lon, when, az, el in rows:
            p = solar_position(lat, lon, when)
            assert abs(p.elevation_deg - el) <= 0.2, (lat, lon, when)
            assert azimuth_diff(p.azimuth_deg, az) <= 0.3, (lat, lon, when)

    def test_equinox_near_zenith(self):
        p = solar_position(0.0, 0.0,
                           datetime(2021, 3, 20, 12, 7,
                                    tzinfo=timezone.utc))
        assert p.elevation_deg > 88.0

    def test_night_below_horizon(self):
        p = solar_position(35.66, 139.68,
                           datetime(2021, 9, 21, 15, 0,
                                    tzinfo=timezone.utc))  # 00:00 JST
        assert p.elevation_deg < 0.0


class TestProperties:
    @settings(max_examples=100, deadline=None)
    @given(st.floats(-90, 90), st.floats(-180, 180),
           st.integers(0, 100 * 365 * 24 - 1))
    def test_ranges(self, lat, lon, hours):
        when = datetime(1950, 1, 1, tzinfo=timezone.utc) \
            + timedelta(hours=hours)
        if when.year > 2050:
            when = when.replace(year=2050)
        p = solar_position(lat, lon, when)
        assert 0.0 <= p.azimuth_deg < 360.0
        assert -90.0 <= p.elevation_deg <= 90.0

    @settings(max_examples=30, deadline=None)
    @given(st.floats(-55, 55), st.floats(-179, 179),
           st.integers(0, 36524))
    def test_minute_continuity(self, lat, lon, days):
        base = datetime(1950, 6, 1, 9, 11, tzinfo=timezone.utc) \
            + timedelta(days=days)
        if base.year > 2050:
            base = base.replace(year=2050)
        p1 = solar_position(lat, lon, base)
        p2 = solar_position(lat, lon, base + timedelta(minutes=1))
        assert abs(p2.elevation_deg - p1.elevation_deg) < 1.0
        if max(p1.elevation_deg, p2.elevation_deg) < 75.0:
            assert azimuth_diff(p2.azimuth_deg, p1.azimuth_deg) < 1.0

    def test_noon_maximizes_elevation(self):
        lat, lon = 48.0, 11.0
        day = datetime(2021, 6, 21, tzinfo=timezone.utc)
        times = [day + timedelta(minutes=10 * k) for k in range(144)]
        az, el = solar_positions(lat, lon, times)
        noon_idx = int(el.argmax())
        noon = times[noon_idx]
        assert 10 <= noon.hour <= 13  # near local solar noon for 11 deg E
        assert all(el[noon_idx] >= e for e in el)

    def test_vectorized_matches_scalar(self):
        times = [datetime(2021, 9, 21, 6 + k, 0, tzinfo=timezone.utc)
                 for k in range(10)]
        az, el = solar_positions(35.66, -0.45, times)
        for i, t in enumerate(times):
            p = solar_position(35.66, -0.45, t)
            assert p.azimuth_deg == pytest.approx(az[i], abs=1e-12)
            assert p.elevation_deg == pytest.approx(el[i], abs=1e-12)

    def test_coordinate_range_errors(self):
        t = datetime(2021, 9, 21, tzinfo=timezone.utc)
        with pytest.raises(RangeError):
            solar_position(91.0, 0.0, t)
        with pytest.raises(RangeError):
            solar_position(0.0, 181.0, t)
