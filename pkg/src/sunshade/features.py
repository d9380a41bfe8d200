"""Per-minute per-satellite feature rows for sun/shade classification.

Each row pairs one satellite's minute-averaged signal strength and angles
with the sun's angles at minutes t-1, t, t+1 (15 numeric features) plus
the UV-derived label at minute t. Rows exist only where the satellite has
aggregates at all three minutes and a label exists at t.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

import numpy as np

from sunshade import ephemeris, groundtruth, nmea
from sunshade.errors import InvalidMaskError, MalformedError
from sunshade.groundtruth import SunShadeLabel

# Canonical column order; also the feature CSV layout.
FEATURE_NAMES = [
    "s_t", "s_tm1", "s_tp1",
    "a_sat_t", "a_sat_tm1", "a_sat_tp1",
    "e_sat_t", "e_sat_tm1", "e_sat_tp1",
    "a_sun_t", "a_sun_tm1", "a_sun_tp1",
    "e_sun_t", "e_sun_tm1", "e_sun_tp1",
]

# Human-readable names used in importance reports.
DISPLAY_NAMES = {
    "s_t": "S(t)", "s_tm1": "S(t-1)", "s_tp1": "S(t+1)",
    "a_sat_t": "A_SAT(t)", "a_sat_tm1": "A_SAT(t-1)",
    "a_sat_tp1": "A_SAT(t+1)",
    "e_sat_t": "E_SAT(t)", "e_sat_tm1": "E_SAT(t-1)",
    "e_sat_tp1": "E_SAT(t+1)",
    "a_sun_t": "A_SUN(t)", "a_sun_tm1": "A_SUN(t-1)",
    "a_sun_tp1": "A_SUN(t+1)",
    "e_sun_t": "E_SUN(t)", "e_sun_tm1": "E_SUN(t-1)",
    "e_sun_tp1": "E_SUN(t+1)",
}

CSV_HEADER = ["minute_utc", "talker", "svid"] + FEATURE_NAMES + ["label"]

_SET_COLUMNS = {
    "A": ["a_sat_t", "e_sat_t"],
    "B": ["s_t"],
    "C": ["a_sun_t", "e_sun_t"],
}
_DELTA_COLUMNS = {
    "A": ["a_sat_tm1", "a_sat_tp1", "e_sat_tm1", "e_sat_tp1"],
    "B": ["s_tm1", "s_tp1"],
    "C": ["a_sun_tm1", "a_sun_tp1", "e_sun_tm1", "e_sun_tp1"],
}


@dataclass(frozen=True)
class MinuteSatAggregate:
    minute: datetime
    sat_key: tuple[str, int]
    mean_cn0_dbhz: float
    mean_azimuth_deg: float
    mean_elevation_deg: float
    sample_count: int


@dataclass(frozen=True)
class FeatureRow:
    minute: datetime
    sat_key: tuple[str, int]
    values: tuple[float, ...]  # 15 floats in FEATURE_NAMES order
    label: SunShadeLabel

    def day(self):
        return self.minute.date()


@dataclass(frozen=True)
class FeatureSetMask:
    """Which of the paper-style feature sets are active.

    A = satellite angles, B = C/N0, C = sun angles, D = the t-1/t+1
    variants of whichever base sets are selected. D alone is invalid.
    """
    include_sat: bool = True
    include_cn0: bool = True
    include_sun: bool = True
    include_delta: bool = True

    def validate(self) -> None:
        if not (self.include_sat or self.include_cn0 or self.include_sun):
            if self.include_delta:
                raise InvalidMaskError(
                    "delta set (D) cannot be used alone: it only modifies "
                    "base sets A/B/C")
            raise InvalidMaskError("mask selects no feature set")

    @property
    def code(self) -> str:
        return (("A" if self.include_sat else "-")
                + ("B" if self.include_cn0 else "-")
                + ("C" if self.include_sun else "-")
                + ("D" if self.include_delta else "-"))

    @classmethod
    def from_code(cls, code: str) -> "FeatureSetMask":
        """Parse a mask code like 'ABCD' or 'A-C-'.

        Letters may appear in any position; dashes are placeholders, so
        both '---D' and '-D--' denote the (invalid) delta-only mask."""
        letters = set(code.upper()) - {"-"}
        unknown = letters - {"A", "B", "C", "D"}
        if unknown:
            raise InvalidMaskError(
                f"unknown feature-set letters {sorted(unknown)} in "
                f"{code!r}")
        mask = cls(include_sat="A" in letters, include_cn0="B" in letters,
                   include_sun="C" in letters,
                   include_delta="D" in letters)
        mask.validate()
        return mask

    def columns(self) -> list[str]:
        self.validate()
        active = []
        for letter, flag in (("A", self.include_sat),
                             ("B", self.include_cn0),
                             ("C", self.include_sun)):
            if flag:
                active.append(letter)
        cols = set()
        for letter in active:
            cols.update(_SET_COLUMNS[letter])
            if self.include_delta:
                cols.update(_DELTA_COLUMNS[letter])
        return [c for c in FEATURE_NAMES if c in cols]


def all_mask_codes() -> list[str]:
    """The 14 valid mask codes: non-empty subsets of {A,B,C}, each with
    and without D."""
    codes = []
    for bits in range(1, 8):
        letters = (("A" if bits & 4 else "-")
                   + ("B" if bits & 2 else "-")
                   + ("C" if bits & 1 else "-"))
        codes.append(letters + "-")
        codes.append(letters + "D")
    return codes


def aggregate_minutes(observations) -> list[MinuteSatAggregate]:
    """Group observations by (minute, satellite) and average.

    Observations without a C/N0 value are excluded entirely. Azimuth is
    averaged circularly (mean of unit vectors) so e.g. {359, 1} -> 0.
    """
    groups: dict[tuple[datetime, tuple[str, int]], list] = {}
    for o in observations:
        if o.cn0_dbhz is None:
            continue
        minute = groundtruth.truncate_minute(o.timestamp_utc)
        groups.setdefault((minute, (o.talker, o.svid)), []).append(o)
    out = []
    for (minute, sat_key) in sorted(groups, key=lambda k: (k[0], k[1])):
        obs = groups[(minute, sat_key)]
        n = len(obs)
        cn0 = sum(o.cn0_dbhz for o in obs) / n
        el = sum(o.elevation_deg for o in obs) / n
        sin_sum = sum(math.sin(math.radians(o.azimuth_deg)) for o in obs)
        cos_sum = sum(math.cos(math.radians(o.azimuth_deg)) for o in obs)
        az = math.degrees(math.atan2(sin_sum, cos_sum)) % 360.0
        if az >= 360.0:  # fmod of a tiny negative rounds up to 360.0
            az = 0.0
        out.append(MinuteSatAggregate(
            minute=minute, sat_key=sat_key, mean_cn0_dbhz=cn0,
            mean_azimuth_deg=az, mean_elevation_deg=el, sample_count=n))
    return out


def build_rows(aggregates, sun_positions, labels
               ) -> tuple[list[FeatureRow], int]:
    """Join aggregates, per-minute sun positions, and per-minute labels
    into feature rows. Minutes lacking the t-1/t+1 context, a label, or a
    sun position are dropped and counted.

    Returns (rows, dropped_count)."""
    per_sat: dict[tuple[str, int], dict[datetime, MinuteSatAggregate]] = {}
    for a in aggregates:
        per_sat.setdefault(a.sat_key, {})[a.minute] = a
    rows: list[FeatureRow] = []
    dropped = 0
    step = timedelta(minutes=1)
    for sat_key in sorted(per_sat):
        by_minute = per_sat[sat_key]
        for minute in sorted(by_minute):
            prev_m, next_m = minute - step, minute + step
            label = labels.get(minute)
            if (label is None or prev_m not in by_minute
                    or next_m not in by_minute
                    or any(m not in sun_positions
                           for m in (prev_m, minute, next_m))):
                dropped += 1
                continue
            a_t = by_minute[minute]
            a_p = by_minute[prev_m]
            a_n = by_minute[next_m]
            s_t, s_p, s_n = (sun_positions[minute], sun_positions[prev_m],
                             sun_positions[next_m])
            values = (
                a_t.mean_cn0_dbhz, a_p.mean_cn0_dbhz, a_n.mean_cn0_dbhz,
                a_t.mean_azimuth_deg, a_p.mean_azimuth_deg,
                a_n.mean_azimuth_deg,
                a_t.mean_elevation_deg, a_p.mean_elevation_deg,
                a_n.mean_elevation_deg,
                s_t.azimuth_deg, s_p.azimuth_deg, s_n.azimuth_deg,
                s_t.elevation_deg, s_p.elevation_deg, s_n.elevation_deg,
            )
            rows.append(FeatureRow(minute=minute, sat_key=sat_key,
                                   values=values, label=label))
    return rows, dropped


def feature_matrix(rows) -> np.ndarray:
    """All 15 features as an (n, 15) float64 matrix."""
    return np.array([r.values for r in rows], dtype=np.float64)


def label_vector(rows) -> np.ndarray:
    """Labels as int64 {shade: 0, sun: 1}."""
    return np.array([1 if r.label is SunShadeLabel.SUN else 0
                     for r in rows], dtype=np.int64)


def apply_mask(rows, mask: FeatureSetMask
               ) -> tuple[np.ndarray, list[str]]:
    """Select the mask's columns from feature rows.

    Returns (matrix, column_names) with columns in canonical order."""
    mask.validate()
    names = mask.columns()
    idx = [FEATURE_NAMES.index(c) for c in names]
    full = feature_matrix(rows)
    return np.ascontiguousarray(full[:, idx]), names


@dataclass(frozen=True)
class StandardizerStats:
    mean: tuple[float, ...]
    std: tuple[float, ...]


def standardize_fit(matrix: np.ndarray) -> StandardizerStats:
    """Per-column mean and population standard deviation.

    Fit on training data only; applying with these stats never uses test
    statistics."""
    mean = np.mean(matrix, axis=0)
    std = np.std(matrix, axis=0)
    return StandardizerStats(mean=tuple(float(v) for v in mean),
                             std=tuple(float(v) for v in std))


def standardize_apply(matrix: np.ndarray,
                      stats: StandardizerStats) -> np.ndarray:
    """Z-score columns with training stats; near-constant columns
    (std < 1e-12) map to zero."""
    mean = np.asarray(stats.mean, dtype=np.float64)
    std = np.asarray(stats.std, dtype=np.float64)
    degenerate = std < 1e-12
    safe = np.where(degenerate, 1.0, std)
    out = (matrix - mean) / safe
    if degenerate.any():
        out[:, degenerate] = 0.0
    return out


def rows_to_csv(rows, fh) -> None:
    w = csv.writer(fh)
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.minute.strftime("%Y-%m-%dT%H:%M:%SZ"),
                    r.sat_key[0], r.sat_key[1]]
                   + [repr(v) for v in r.values] + [r.label.value])


def rows_from_csv(fh) -> list[FeatureRow]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise MalformedError("unexpected feature CSV header")
    rows = []
    for rec in reader:
        if not rec:
            continue
        minute = datetime.strptime(rec[0], "%Y-%m-%dT%H:%M:%SZ").replace(
            tzinfo=timezone.utc)
        values = tuple(float(v) for v in rec[3:18])
        rows.append(FeatureRow(
            minute=minute, sat_key=(rec[1], int(rec[2])), values=values,
            label=SunShadeLabel(rec[18])))
    return rows


@dataclass
class FeaturizeInfo:
    session_latitude_deg: float
    session_longitude_deg: float
    n_observations: int
    n_aggregates: int
    n_rows: int
    dropped_rows: int
    uv_rows_skipped: int
    label_counts: dict


def featurize(observations, fixes, uv_samples,
              threshold: float = groundtruth.DEFAULT_UVI_THRESHOLD,
              uv_skipped: int = 0) -> tuple[list[FeatureRow], FeaturizeInfo]:
    """Full feature pipeline for one session.

    The session position is the median of valid RMC fixes (the receiver
    is stationary); sun positions are computed per minute at that spot.
    """
    valid = [f for f in fixes if f.valid]
    if not valid:
        raise MalformedError("no valid RMC fixes: cannot locate session")
    lat = float(np.median([f.latitude_deg for f in valid]))
    lon = float(np.median([f.longitude_deg for f in valid]))

    aggregates = aggregate_minutes(observations)
    minutes = sorted({a.minute for a in aggregates})
    step = timedelta(minutes=1)
    wanted = sorted({m for a in minutes for m in (a - step, a, a + step)})
    az, el = ephemeris.solar_positions(lat, lon, wanted)
    sun = {m: ephemeris.SolarPosition(azimuth_deg=float(az[i]),
                                      elevation_deg=float(el[i]))
           for i, m in enumerate(wanted)}
    labels = groundtruth.minute_labels(uv_samples, threshold)
    rows, dropped = build_rows(aggregates, sun, labels)
    counts = {"sun": sum(1 for r in rows if r.label is SunShadeLabel.SUN),
              "shade": sum(1 for r in rows
                           if r.label is SunShadeLabel.SHADE)}
    info = FeaturizeInfo(
        session_latitude_deg=lat, session_longitude_deg=lon,
        n_observations=len(observations), n_aggregates=len(aggregates),
        n_rows=len(rows), dropped_rows=dropped, uv_rows_skipped=uv_skipped,
        label_counts=counts)
    return rows, info


def parse_inputs(nmea_paths, uv_paths, uv_clock_offset_s: float = 0.0):
    """Read NMEA logs and UV CSVs from disk for `featurize`."""
    observations: list[nmea.SatObservation] = []
    fixes: list[nmea.PositionFix] = []
    for path in nmea_paths:
        with open(path, "r", errors="replace") as fh:
            result = nmea.parse_log(fh)
        observations.extend(result.observations)
        fixes.extend(result.fixes)
    samples = []
    skipped = 0
    for path in uv_paths:
        with open(path, "r", newline="") as fh:
            rows, nskip = groundtruth.parse_uv_csv(fh, uv_clock_offset_s)
        samples.extend(rows)
        skipped += nskip
    return observations, fixes, samples, skipped
