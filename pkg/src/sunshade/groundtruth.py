"""UV-sensor log ingestion and per-minute sun/shade labeling.

A place counts as shaded when its minute-mean UV Index falls below a
threshold (default 0.35; exactly 0.35 labels Sun). The threshold is a
parameter because it was calibrated for one climate and may need
adjustment elsewhere.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from enum import Enum

from sunshade.errors import MissingHeaderError

UV_CSV_HEADER = ["timestamp", "uva", "uvb", "uvi"]
DEFAULT_UVI_THRESHOLD = 0.35


class SunShadeLabel(Enum):
    SHADE = "shade"
    SUN = "sun"


@dataclass(frozen=True)
class UvSample:
    timestamp_utc: datetime
    uva: float
    uvb: float
    uvi: float


def _parse_iso_utc(text: str) -> datetime:
    text = text.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    when = datetime.fromisoformat(text)
    if when.tzinfo is None:
        when = when.replace(tzinfo=timezone.utc)
    return when.astimezone(timezone.utc)


def parse_uv_csv(stream, clock_offset_s: float = 0.0
                 ) -> tuple[list[UvSample], int]:
    """Read UV samples from a `timestamp,uva,uvb,uvi` CSV stream.

    Rows with unparseable timestamps or non-finite/negative UVI are
    skipped and counted. `clock_offset_s` is added to every timestamp
    (constant sensor-clock correction). Returns (samples, skipped_rows).
    """
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingHeaderError("empty UV CSV")
    if [h.strip().lower() for h in header] != UV_CSV_HEADER:
        raise MissingHeaderError(
            f"expected header {','.join(UV_CSV_HEADER)!r}, "
            f"got {','.join(header)!r}")
    offset = timedelta(seconds=clock_offset_s)
    samples: list[UvSample] = []
    skipped = 0
    for row in reader:
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < 4:
            skipped += 1
            continue
        try:
            when = _parse_iso_utc(row[0]) + offset
            uva = float(row[1])
            uvb = float(row[2])
            uvi = float(row[3])
        except ValueError:
            skipped += 1
            continue
        if not (math.isfinite(uvi) and uvi >= 0.0
                and math.isfinite(uva) and math.isfinite(uvb)):
            skipped += 1
            continue
        samples.append(UvSample(timestamp_utc=when, uva=uva, uvb=uvb,
                                uvi=uvi))
    return samples, skipped


def truncate_minute(when: datetime) -> datetime:
    return when.replace(second=0, microsecond=0)


def minute_uvi(samples: list[UvSample]) -> dict[datetime, float]:
    """Arithmetic mean UVI per minute. Minutes without samples are absent
    from the map (no imputation)."""
    sums: dict[datetime, float] = {}
    counts: dict[datetime, int] = {}
    for s in samples:
        minute = truncate_minute(s.timestamp_utc)
        sums[minute] = sums.get(minute, 0.0) + s.uvi
        counts[minute] = counts.get(minute, 0) + 1
    return {m: sums[m] / counts[m] for m in sums}


def label(minute_mean_uvi: float,
          threshold: float = DEFAULT_UVI_THRESHOLD) -> SunShadeLabel:
    """Shade iff the minute-mean UVI is strictly below the threshold."""
    if minute_mean_uvi < threshold:
        return SunShadeLabel.SHADE
    return SunShadeLabel.SUN


def minute_labels(samples: list[UvSample],
                  threshold: float = DEFAULT_UVI_THRESHOLD
                  ) -> dict[datetime, SunShadeLabel]:
    """Per-minute labels from raw samples (mean, then threshold)."""
    return {m: label(v, threshold) for m, v in minute_uvi(samples).items()}
