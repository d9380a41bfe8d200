"""NMEA 0183 ingestion: GSV satellite sightings and RMC position fixes.

Only the two sentence families the pipeline needs are decoded. Everything
else is counted and skipped. Data errors never abort a stream: corrupt
lines are tallied in `ParseStats` and parsing continues, so arbitrary byte
junk is safe input.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

from sunshade.errors import ChecksumError, FieldRangeError, MalformedError


class SentenceKind(Enum):
    GSV = "GSV"
    RMC = "RMC"
    OTHER = "Other"


@dataclass
class RawSentence:
    talker: str
    kind: SentenceKind
    payload_fields: list[str]
    checksum_ok: bool


@dataclass(frozen=True)
class SatObservation:
    """One satellite sighting. (talker, svid) identifies the satellite
    across constellations; cn0_dbhz is None when the receiver reported an
    empty signal-strength field."""
    talker: str
    svid: int
    elevation_deg: float
    azimuth_deg: float
    cn0_dbhz: float | None
    timestamp_utc: datetime


@dataclass(frozen=True)
class PositionFix:
    timestamp_utc: datetime
    latitude_deg: float
    longitude_deg: float
    valid: bool


@dataclass
class ParseStats:
    lines_total: int = 0
    sentences_parsed: int = 0
    checksum_failed: int = 0
    malformed: int = 0
    gsv_sentences: int = 0
    rmc_sentences: int = 0
    other_sentences: int = 0
    observations: int = 0
    fixes_valid: int = 0
    fixes_invalid: int = 0
    gsv_dropped_no_time: int = 0
    blocks_dropped: int = 0


@dataclass
class ParseResult:
    observations: list[SatObservation]
    fixes: list[PositionFix]
    stats: ParseStats = field(default_factory=ParseStats)


def validate_checksum(line: str) -> bool:
    """True iff the XOR of all bytes strictly between '$' and '*' equals
    the two-hex-digit suffix. Lines without '*' fail."""
    line = line.strip()
    if not line.startswith("$"):
        return False
    star = line.find("*")
    if star < 0 or len(line) < star + 3:
        return False
    acc = 0
    for ch in line[1:star]:
        acc ^= ord(ch) & 0xFF
    try:
        want = int(line[star + 1:star + 3], 16)
    except ValueError:
        return False
    return acc == want


def parse_sentence(line: str) -> RawSentence:
    """Split a checksummed sentence into talker, kind, and raw fields.

    Empty fields are preserved as empty strings. Raises ChecksumError for
    corrupt lines and MalformedError for lines that are not sentences."""
    line = line.strip()
    if not line.startswith("$") or len(line) < 2:
        raise MalformedError("no '$' sentence prefix")
    if not validate_checksum(line):
        raise ChecksumError(f"bad checksum: {line[:30]}")
    body = line[1:line.find("*")]
    fields = body.split(",")
    head = fields[0]
    if len(head) < 3:
        raise MalformedError(f"sentence type too short: {head!r}")
    talker = head[:2]
    if head.endswith("GSV"):
        kind = SentenceKind.GSV
    elif head.endswith("RMC"):
        kind = SentenceKind.RMC
    else:
        kind = SentenceKind.OTHER
    return RawSentence(talker=talker, kind=kind, payload_fields=fields[1:],
                       checksum_ok=True)


def parse_gsv(sentence: RawSentence,
              current_time: datetime) -> tuple[list[SatObservation], int]:
    """Decode the satellite blocks of a GSV sentence.

    Fields are [total msgs, msg num, sats in view, (svid, el, az, cn0)*],
    with an optional trailing signal-ID field (NMEA 4.1x) that is ignored.
    Blocks with missing or out-of-range svid/elevation/azimuth are dropped
    and counted; an empty C/N0 field maps to cn0_dbhz=None.

    Returns (observations, dropped_block_count).
    """
    if sentence.kind is not SentenceKind.GSV:
        raise MalformedError("not a GSV sentence")
    fields = sentence.payload_fields
    blocks = fields[3:]
    if len(blocks) % 4 == 1:  # trailing signal ID
        blocks = blocks[:-1]
    observations = []
    dropped = 0
    for k in range(0, len(blocks) - 3, 4):
        svid_s, el_s, az_s, cn0_s = blocks[k:k + 4]
        try:
            svid = int(svid_s)
            el = float(el_s)
            az = float(az_s)
            cn0 = float(cn0_s) if cn0_s.strip() else None
        except ValueError:
            dropped += 1
            continue
        if not (0.0 <= el <= 90.0 and 0.0 <= az < 360.0):
            dropped += 1
            continue
        if cn0 is not None and not (0.0 <= cn0 <= 64.0):
            dropped += 1
            continue
        observations.append(SatObservation(
            talker=sentence.talker, svid=svid, elevation_deg=el,
            azimuth_deg=az, cn0_dbhz=cn0, timestamp_utc=current_time))
    return observations, dropped


def _parse_latlon(value: str, hemi: str, is_lon: bool) -> float:
    deg_digits = 3 if is_lon else 2
    raw = float(value)
    if raw < 0:
        raise MalformedError(f"negative coordinate field {value!r}")
    dd = int(raw // 100.0)
    minutes = raw - dd * 100.0
    if minutes >= 60.0 or dd >= 10 ** deg_digits:
        raise MalformedError(f"coordinate field out of ddmm form: {value!r}")
    out = dd + minutes / 60.0
    if hemi in ("S", "W"):
        out = -out
    elif hemi not in ("N", "E"):
        raise MalformedError(f"bad hemisphere {hemi!r}")
    limit = 180.0 if is_lon else 90.0
    if not -limit <= out <= limit:
        raise FieldRangeError(f"coordinate {out} outside +/-{limit}")
    return out


def parse_rmc(sentence: RawSentence) -> PositionFix:
    """Decode an RMC sentence into a PositionFix.

    Status 'A' marks a valid fix, 'V' (or missing coordinates) an invalid
    one. Invalid fixes carry latitude/longitude 0 and valid=False; they
    are never used downstream. Raises MalformedError when the time/date or
    an A-status coordinate cannot be parsed."""
    if sentence.kind is not SentenceKind.RMC:
        raise MalformedError("not an RMC sentence")
    f = sentence.payload_fields
    if len(f) < 9:
        raise MalformedError("RMC sentence too short")
    time_s, status = f[0], f[1]
    date_s = f[8]
    try:
        hh = int(time_s[0:2])
        mm = int(time_s[2:4])
        ss = int(float(time_s[4:]))  # seconds resolution
        day = int(date_s[0:2])
        mon = int(date_s[2:4])
        yy = int(date_s[4:6])
    except (ValueError, IndexError):
        raise MalformedError(f"bad RMC time/date {time_s!r} {date_s!r}")
    year = 1900 + yy if yy >= 80 else 2000 + yy
    try:
        when = datetime(year, mon, day, hh, mm, ss, tzinfo=timezone.utc)
    except ValueError:
        raise MalformedError(f"bad RMC calendar fields {time_s!r} {date_s!r}")

    valid = status == "A"
    lat = lon = 0.0
    if f[2] and f[4]:
        try:
            lat = _parse_latlon(f[2], f[3], is_lon=False)
            lon = _parse_latlon(f[4], f[5], is_lon=True)
        except (MalformedError, FieldRangeError, ValueError):
            if valid:
                raise MalformedError(f"bad RMC coordinates {f[2]!r} {f[4]!r}")
            lat = lon = 0.0
    elif valid:
        raise MalformedError("A-status RMC without coordinates")
    return PositionFix(timestamp_utc=when, latitude_deg=lat,
                       longitude_deg=lon, valid=valid)


def parse_log(stream) -> ParseResult:
    """Parse an NMEA text stream line by line.

    GSV observations are stamped with the time of the most recent valid
    RMC fix; GSV sentences seen before any such fix are dropped and
    counted. Both LF and CRLF line endings are accepted. Data errors are
    tallied, never raised."""
    stats = ParseStats()
    observations: list[SatObservation] = []
    fixes: list[PositionFix] = []
    current_time: datetime | None = None
    for line in stream:
        line = line.strip()
        if not line:
            continue
        stats.lines_total += 1
        if not line.startswith("$"):
            stats.malformed += 1
            continue
        if not validate_checksum(line):
            stats.checksum_failed += 1
            continue
        try:
            sentence = parse_sentence(line)
        except (MalformedError, ChecksumError):
            stats.malformed += 1
            continue
        stats.sentences_parsed += 1
        if sentence.kind is SentenceKind.RMC:
            stats.rmc_sentences += 1
            try:
                fix = parse_rmc(sentence)
            except MalformedError:
                stats.malformed += 1
                continue
            fixes.append(fix)
            if fix.valid:
                stats.fixes_valid += 1
                current_time = fix.timestamp_utc
            else:
                stats.fixes_invalid += 1
        elif sentence.kind is SentenceKind.GSV:
            stats.gsv_sentences += 1
            if current_time is None:
                stats.gsv_dropped_no_time += 1
                continue
            obs, dropped = parse_gsv(sentence, current_time)
            stats.blocks_dropped += dropped
            observations.extend(obs)
            stats.observations += len(obs)
        else:
            stats.other_sentences += 1
    return ParseResult(observations=observations, fixes=fixes, stats=stats)


CSV_HEADER = ["timestamp_utc", "talker", "svid", "elevation_deg",
              "azimuth_deg", "cn0_dbhz"]


def observations_to_csv(observations, fh) -> None:
    """Dump observations as CSV (empty cn0 cell for absent values)."""
    w = csv.writer(fh)
    w.writerow(CSV_HEADER)
    for o in observations:
        cn0 = "" if o.cn0_dbhz is None else repr(o.cn0_dbhz)
        w.writerow([o.timestamp_utc.strftime("%Y-%m-%dT%H:%M:%SZ"),
                    o.talker, o.svid, repr(o.elevation_deg),
                    repr(o.azimuth_deg), cn0])
