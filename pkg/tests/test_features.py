"""Feature construction tests: minute aggregation, row building, masks,
standardization."""

import io
from datetime import datetime, timedelta, timezone

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunshade import features
from sunshade.ephemeris import SolarPosition
from sunshade.errors import InvalidMaskError, MalformedError
from sunshade.features import (FEATURE_NAMES, FeatureSetMask,
                               aggregate_minutes, all_mask_codes,
                               apply_mask, build_rows, rows_from_csv,
                               rows_to_csv, standardize_apply,
                               standardize_fit)
from sunshade.groundtruth import SunShadeLabel
from sunshade.nmea import SatObservation

T0 = datetime(2021, 9, 21, 10, 0, tzinfo=timezone.utc)


def obs(minute_offset, cn0, az=120.0, el=45.0, svid=5, talker="GP",
        second=0):
    return SatObservation(
        talker=talker, svid=svid, elevation_deg=el, azimuth_deg=az,
        cn0_dbhz=cn0,
        timestamp_utc=T0 + timedelta(minutes=minute_offset,
                                     seconds=second))


class TestAggregateMinutes:
    def test_cn0_mean(self):
        aggs = aggregate_minutes([obs(0, 44.0, second=0),
                                  obs(0, 46.0, second=20),
                                  obs(0, 48.0, second=40)])
        assert len(aggs) == 1
        assert aggs[0].mean_cn0_dbhz == pytest.approx(46.0)
        assert aggs[0].sample_count == 3

    def test_circular_azimuth_wrap(self):
        aggs = aggregate_minutes([obs(0, 40.0, az=359.0),
                                  obs(0, 40.0, az=1.0, second=30)])
        assert aggs[0].mean_azimuth_deg == pytest.approx(0.0, abs=1e-9)

    def test_absent_cn0_excluded_entirely(self):
        aggs = aggregate_minutes([obs(0, None), obs(0, 40.0, second=30)])
        assert aggs[0].sample_count == 1
        assert aggs[0].mean_cn0_dbhz == pytest.approx(40.0)

    def test_distinct_satellites_not_merged(self):
        aggs = aggregate_minutes([obs(0, 40.0, svid=5),
                                  obs(0, 30.0, svid=5, talker="GA")])
        assert len(aggs) == 2

    def test_mean_within_bounds(self):
        aggs = aggregate_minutes([obs(0, 30.0, el=10.0),
                                  obs(0, 50.0, el=20.0, second=30)])
        a = aggs[0]
        assert 30.0 <= a.mean_cn0_dbhz <= 50.0
        assert 10.0 <= a.mean_elevation_deg <= 20.0


def make_pipeline_inputs(n_minutes, svids=(5,), visible=None):
    observations = []
    for m in range(n_minutes):
        for svid in svids:
            if visible and m not in visible.get(svid, range(n_minutes)):
                continue
            observations.append(obs(m, 40.0 + svid % 3, svid=svid))
    aggs = aggregate_minutes(observations)
    minutes = [T0 + timedelta(minutes=m) for m in range(-1, n_minutes + 1)]
    sun = {m: SolarPosition(azimuth_deg=150.0 + i,
                            elevation_deg=30.0 + 0.1 * i)
           for i, m in enumerate(minutes)}
    labels = {T0 + timedelta(minutes=m):
              (SunShadeLabel.SUN if m % 2 == 0 else SunShadeLabel.SHADE)
              for m in range(n_minutes)}
    return aggs, sun, labels


class TestBuildRows:
    def test_boundary_minutes_dropped(self):
        aggs, sun, labels = make_pipeline_inputs(6)
        rows, dropped = build_rows(aggs, sun, labels)
        assert len(rows) == 4  # minutes 1..4 have both neighbors
        assert dropped == 2

    def test_visibility_magnitude(self):
        # full visibility: every interior minute yields one row per sat
        aggs, sun, labels = make_pipeline_inputs(12, svids=(5, 7, 13))
        rows, _ = build_rows(aggs, sun, labels)
        assert len(rows) == 3 * 10

    def test_full_day_magnitude(self):
        # 13 satellites fully visible over 722 labeled minutes produce
        # 13 x 720 rows, the order of a real half-day collection
        aggs, sun, labels = make_pipeline_inputs(
            722, svids=tuple(range(1, 14)))
        rows, _ = build_rows(aggs, sun, labels)
        assert len(rows) == 13 * 720

    def test_minute_without_label_dropped(self):
        aggs, sun, labels = make_pipeline_inputs(6)
        del labels[T0 + timedelta(minutes=2)]
        rows, dropped = build_rows(aggs, sun, labels)
        assert len(rows) == 3 and dropped == 3

    def test_fifteen_finite_features(self):
        aggs, sun, labels = make_pipeline_inputs(5)
        rows, _ = build_rows(aggs, sun, labels)
        for r in rows:
            assert len(r.values) == 15
            assert np.isfinite(r.values).all()

    def test_temporal_consistency(self):
        aggs, sun, labels = make_pipeline_inputs(8)
        rows, _ = build_rows(aggs, sun, labels)
        s_t = FEATURE_NAMES.index("s_t")
        s_tp1 = FEATURE_NAMES.index("s_tp1")
        by_minute = {r.minute: r for r in rows}
        for r in rows:
            nxt = by_minute.get(r.minute + timedelta(minutes=1))
            if nxt is not None:
                assert r.values[s_tp1] == nxt.values[s_t]


class TestMask:
    def test_b_only_single_column(self):
        mask = FeatureSetMask.from_code("-B--")
        assert mask.columns() == ["s_t"]

    def test_abcd_fifteen_columns(self):
        assert FeatureSetMask.from_code("ABCD").columns() == FEATURE_NAMES

    def test_ac_without_delta(self):
        cols = FeatureSetMask.from_code("A-C-").columns()
        assert cols == ["a_sat_t", "e_sat_t", "a_sun_t", "e_sun_t"]

    def test_delta_triples_counts(self):
        for letters, base in (("A", 2), ("B", 1), ("C", 2)):
            no_d = FeatureSetMask.from_code(letters)
            with_d = FeatureSetMask.from_code(letters + "D")
            assert len(no_d.columns()) == base
            assert len(with_d.columns()) == 3 * base

    def test_delta_alone_invalid(self):
        with pytest.raises(InvalidMaskError):
            FeatureSetMask.from_code("---D")
        # positional variants spell the same invalid mask
        with pytest.raises(InvalidMaskError):
            FeatureSetMask.from_code("-D--")

    def test_empty_invalid(self):
        with pytest.raises(InvalidMaskError):
            FeatureSetMask.from_code("----")

    def test_fourteen_codes(self):
        codes = all_mask_codes()
        assert len(codes) == 14
        assert len(set(codes)) == 14
        assert "ABCD" in codes and "-B--" in codes and "---D" not in codes

    def test_apply_mask_selects_columns(self):
        aggs, sun, labels = make_pipeline_inputs(5)
        rows, _ = build_rows(aggs, sun, labels)
        X, names = apply_mask(rows, FeatureSetMask.from_code("-B-D"))
        assert names == ["s_t", "s_tm1", "s_tp1"]
        assert X.shape == (len(rows), 3)


class TestStandardize:
    def test_two_point_zscore(self):
        X = np.array([[1.0], [3.0]])
        stats = standardize_fit(X)
        assert stats.mean == (2.0,)
        assert stats.std == (1.0,)
        out = standardize_apply(X, stats)
        assert out.ravel().tolist() == [-1.0, 1.0]

    def test_constant_column_maps_to_zero(self):
        X = np.full((4, 2), 7.0)
        X[:, 1] = [1.0, 2.0, 3.0, 4.0]
        out = standardize_apply(X, standardize_fit(X))
        assert (out[:, 0] == 0.0).all()

    def test_training_stats_applied_to_test(self):
        train = np.array([[0.0], [10.0]])
        stats = standardize_fit(train)
        test = np.array([[5.0], [15.0]])
        out = standardize_apply(test, stats)
        assert out.ravel().tolist() == [0.0, 2.0]

    @given(st.integers(2, 40), st.integers(1, 6))
    def test_fit_apply_zero_mean_unit_std(self, n, d):
        rng = np.random.default_rng(n * 7 + d)
        X = rng.normal(3.0, 2.5, (n, d))
        out = standardize_apply(X, standardize_fit(X))
        assert np.allclose(out.mean(axis=0), 0.0, atol=1e-9)


def test_csv_round_trip():
    aggs, sun, labels = make_pipeline_inputs(6, svids=(5, 193))
    rows, _ = build_rows(aggs, sun, labels)
    buf = io.StringIO()
    rows_to_csv(rows, buf)
    buf.seek(0)
    back = rows_from_csv(buf)
    assert back == rows


def test_csv_rejects_wrong_header():
    with pytest.raises(MalformedError):
        rows_from_csv(io.StringIO("a,b,c\n1,2,3\n"))
