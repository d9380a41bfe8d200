"""Solar azimuth/elevation from latitude, longitude, and UTC time.

Implements the classic low-accuracy astronomical recipe (Julian day ->
solar mean anomaly -> ecliptic longitude -> declination / right ascension
-> hour angle -> horizontal coordinates). Good to well under 0.1 degrees
over 1950-2050, which is far below the noise floor of the classification
features this feeds. No atmospheric refraction correction is applied:
values are true (geometric) elevations.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from sunshade.errors import RangeError

_JD_UNIX_EPOCH = 2440587.5
_JD_J2000 = 2451545.0

YEAR_MIN = 1950
YEAR_MAX = 2050


@dataclass(frozen=True)
class SolarPosition:
    """Sun direction in local horizontal coordinates.

    azimuth_deg is clockwise from true north in [0, 360); elevation_deg is
    degrees above the horizon in [-90, 90].
    """

    azimuth_deg: float
    elevation_deg: float


def _as_utc(utc: datetime) -> datetime:
    if utc.tzinfo is None:
        return utc.replace(tzinfo=timezone.utc)
    return utc.astimezone(timezone.utc)


def julian_day(utc: datetime) -> float:
    """Continuous astronomical Julian day for a UTC instant.

    Naive datetimes are taken as UTC. Leap seconds are ignored, which is
    insignificant at the accuracy this module targets.
    """
    utc = _as_utc(utc)
    if not (YEAR_MIN <= utc.year <= YEAR_MAX):
        raise RangeError(f"year {utc.year} outside supported range "
                         f"[{YEAR_MIN}, {YEAR_MAX}]")
    return _JD_UNIX_EPOCH + utc.timestamp() / 86400.0


def _sun_az_el(jd: np.ndarray, lat_deg: float, lon_deg: float):
    """Vectorized horizontal solar coordinates for Julian days `jd`."""
    d2r = np.pi / 180.0
    t = (jd - _JD_J2000) / 36525.0

    # Geometric mean longitude and mean anomaly of the sun (degrees).
    l0 = (280.46646 + t * (36000.76983 + t * 0.0003032)) % 360.0
    m = 357.52911 + t * (35999.05029 - t * 0.0001537)
    m_rad = m * d2r

    # Equation of center -> true, then apparent, ecliptic longitude.
    c = ((1.914602 - t * (0.004817 + 0.000014 * t)) * np.sin(m_rad)
         + (0.019993 - 0.000101 * t) * np.sin(2.0 * m_rad)
         + 0.000289 * np.sin(3.0 * m_rad))
    true_long = l0 + c
    omega = (125.04 - 1934.136 * t) * d2r
    app_long = (true_long - 0.00569 - 0.00478 * np.sin(omega)) * d2r

    # Obliquity of the ecliptic, corrected for nutation.
    eps0 = (23.0 + (26.0 + 21.448 / 60.0) / 60.0
            - (46.8150 * t + 0.00059 * t * t - 0.001813 * t ** 3) / 3600.0)
    eps = (eps0 + 0.00256 * np.cos(omega)) * d2r

    # Equatorial coordinates.
    decl = np.arcsin(np.sin(eps) * np.sin(app_long))
    ra = np.arctan2(np.cos(eps) * np.sin(app_long), np.cos(app_long))

    # Greenwich mean sidereal time (degrees) -> local hour angle.
    days = jd - _JD_J2000
    gmst = (280.46061837 + 360.98564736629 * days
            + 0.000387933 * t * t - t ** 3 / 38710000.0) % 360.0
    ha = (gmst + lon_deg - ra / d2r) % 360.0
    ha = np.where(ha > 180.0, ha - 360.0, ha) * d2r

    lat = lat_deg * d2r
    sin_el = (np.sin(lat) * np.sin(decl)
              + np.cos(lat) * np.cos(decl) * np.cos(ha))
    el = np.arcsin(np.clip(sin_el, -1.0, 1.0))

    # Azimuth measured clockwise from north.
    az = np.arctan2(np.sin(ha),
                    np.cos(ha) * np.sin(lat) - np.tan(decl) * np.cos(lat))
    az = (az / d2r + 180.0) % 360.0
    return az, el / d2r


def _check_coords(latitude_deg: float, longitude_deg: float) -> None:
    if not -90.0 <= latitude_deg <= 90.0:
        raise RangeError(f"latitude {latitude_deg} outside [-90, 90]")
    if not -180.0 <= longitude_deg <= 180.0:
        raise RangeError(f"longitude {longitude_deg} outside [-180, 180]")


def solar_position(latitude_deg: float, longitude_deg: float,
                   utc: datetime) -> SolarPosition:
    """Sun azimuth/elevation for one location and UTC instant."""
    _check_coords(latitude_deg, longitude_deg)
    jd = np.asarray(julian_day(utc), dtype=np.float64)
    az, el = _sun_az_el(jd, latitude_deg, longitude_deg)
    return SolarPosition(azimuth_deg=float(az), elevation_deg=float(el))


def solar_positions(latitude_deg: float, longitude_deg: float,
                    utc_times) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized `solar_position` over a sequence of UTC datetimes.

    Returns (azimuth_deg, elevation_deg) float64 arrays.
    """
    _check_coords(latitude_deg, longitude_deg)
    jd = np.array([julian_day(t) for t in utc_times], dtype=np.float64)
    return _sun_az_el(jd, latitude_deg, longitude_deg)
