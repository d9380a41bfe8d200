"""Synthetic ground-truth scenes: NMEA logs, UV traces, and known labels.

A scene is a stationary receiver next to sector occluders (wall sections)
that screen both sunlight and satellite signals, under a sky with passing
clouds that do the same for a minute at a time. Per minute and satellite,
the simulator emits GSV/RMC sentences with C/N0 attenuated while the
satellite is screened, and a UV CSV whose index drops by a fixed factor
while the sun is. The pipeline can therefore be validated end to end
against the scene's exact truth.

Satellite trajectories are synthetic arcs (azimuth sweep plus a rise/set
elevation bow). Most arcs transit the occluded sector in near-sync with
the sun (jittered by a few minutes), the way a sky biased toward the
solar corridor behaves; the rest wander independently. The default scenes
move the rig to a different spot around the structure each day, so the
occluded sector shifts from day to day: signal strength stays informative
while bare geometry does not generalize across days.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date as date_type
from datetime import datetime, timedelta, timezone

import numpy as np

from sunshade import ephemeris
from sunshade.errors import ConfigError

TALKERS = ["GP", "GL", "GA", "GQ"]
_SVID_POOLS = {
    "GP": [5, 7, 13, 19, 28, 30, 15, 24],
    "GL": [66, 70, 77, 84, 72, 79],
    "GA": [3, 14, 26, 8, 21],
    "GQ": [193, 195, 194, 199],
}

MIN_VISIBLE_ELEVATION = 5.0


@dataclass(frozen=True)
class Occluder:
    azimuth_min_deg: float
    azimuth_max_deg: float
    elevation_mask_deg: float

    def contains(self, az_deg: float, el_deg: float) -> bool:
        if el_deg >= self.elevation_mask_deg:
            return False
        az = az_deg % 360.0
        lo = self.azimuth_min_deg % 360.0
        hi = self.azimuth_max_deg % 360.0
        if lo <= hi:
            return lo <= az <= hi
        return az >= lo or az <= hi


@dataclass(frozen=True)
class DayWindow:
    """One collection window, aligned to whole UTC minutes."""
    date: date_type
    start_hour: float
    end_hour: float

    def start(self) -> datetime:
        base = datetime(self.date.year, self.date.month, self.date.day,
                        tzinfo=timezone.utc)
        return base + timedelta(minutes=round(self.start_hour * 60.0))

    def n_minutes(self) -> int:
        return (round(self.end_hour * 60.0)
                - round(self.start_hour * 60.0))


@dataclass
class SceneConfig:
    name: str
    latitude_deg: float
    longitude_deg: float
    days: list
    occluders: list  # list of per-day Occluder lists
    n_satellites: int = 11
    cn0_base_dbhz: float = 47.0
    cn0_attenuation_dbhz: float = 11.0
    cn0_noise_std: float = 4.5
    cn0_elevation_taper: float = 0.12
    uvi_peak: float = 6.0
    uvi_shade_factor: float = 0.05
    uvi_noise_std: float = 0.012
    uvi_threshold: float = 0.35
    gsv_period_s: int = 10
    uv_period_s: int = 1
    sync_jitter_min: float = 5.0
    wanderer_fraction: float = 0.05
    dropout_prob: float = 0.01
    cloud_prob: float = 0.10
    cloud_atten_dbhz: float = 11.0
    cloud_uvi_factor: float = 0.05
    seed: int = 42

    def validate(self) -> None:
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise ConfigError("latitude_deg", "outside [-90, 90]")
        if not -180.0 <= self.longitude_deg <= 180.0:
            raise ConfigError("longitude_deg", "outside [-180, 180]")
        if not self.days:
            raise ConfigError("days", "at least one day window required")
        for w in self.days:
            if w.end_hour <= w.start_hour:
                raise ConfigError("days", f"{w.date}: end_hour must exceed "
                                          "start_hour")
        if len(self.occluders) != len(self.days):
            raise ConfigError("occluders",
                              "need one occluder list per day")
        for day_occs in self.occluders:
            for occ in day_occs:
                if not 0.0 <= occ.elevation_mask_deg <= 90.0:
                    raise ConfigError("occluders",
                                      "elevation mask outside [0, 90]")
        if self.n_satellites < 1 or self.n_satellites > sum(
                len(p) for p in _SVID_POOLS.values()):
            raise ConfigError("n_satellites", "out of supported range")
        if not 0.0 < self.uvi_shade_factor < 1.0:
            raise ConfigError("uvi_shade_factor", "must be in (0, 1)")
        if self.cn0_noise_std < 0 or self.uvi_noise_std < 0:
            raise ConfigError("cn0_noise_std", "noise std must be >= 0")
        if self.gsv_period_s < 1 or 60 % self.gsv_period_s != 0:
            raise ConfigError("gsv_period_s", "must divide 60")
        if self.uv_period_s < 1 or 60 % self.uv_period_s != 0:
            raise ConfigError("uv_period_s", "must divide 60")
        if not 0.0 <= self.wanderer_fraction <= 1.0:
            raise ConfigError("wanderer_fraction", "must be in [0, 1]")
        if not 0.0 <= self.dropout_prob < 1.0:
            raise ConfigError("dropout_prob", "must be in [0, 1)")
        if not 0.0 <= self.cloud_prob < 1.0:
            raise ConfigError("cloud_prob", "must be in [0, 1)")
        if not 0.0 < self.cloud_uvi_factor <= 1.0:
            raise ConfigError("cloud_uvi_factor", "must be in (0, 1]")

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "latitude_deg": self.latitude_deg,
            "longitude_deg": self.longitude_deg,
            "days": [{"date": w.date.isoformat(),
                      "start_hour": w.start_hour, "end_hour": w.end_hour}
                     for w in self.days],
            "occluders": [[[o.azimuth_min_deg, o.azimuth_max_deg,
                            o.elevation_mask_deg] for o in day]
                          for day in self.occluders],
        }
        for key in ("n_satellites", "cn0_base_dbhz", "cn0_attenuation_dbhz",
                    "cn0_noise_std", "cn0_elevation_taper", "uvi_peak",
                    "uvi_shade_factor", "uvi_noise_std", "uvi_threshold",
                    "gsv_period_s", "uv_period_s", "sync_jitter_min",
                    "wanderer_fraction", "dropout_prob", "cloud_prob",
                    "cloud_atten_dbhz", "cloud_uvi_factor", "seed"):
            doc[key] = getattr(self, key)
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SceneConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("<json>", f"not valid JSON: {exc}")
        try:
            days = [DayWindow(date=date_type.fromisoformat(w["date"]),
                              start_hour=float(w["start_hour"]),
                              end_hour=float(w["end_hour"]))
                    for w in doc["days"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("days", f"malformed day window: {exc}")
        try:
            occluders = [[Occluder(float(o[0]), float(o[1]), float(o[2]))
                          for o in day] for day in doc["occluders"]]
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ConfigError("occluders", f"malformed occluder: {exc}")
        kwargs = {}
        for key, cast in (("n_satellites", int), ("cn0_base_dbhz", float),
                          ("cn0_attenuation_dbhz", float),
                          ("cn0_noise_std", float),
                          ("cn0_elevation_taper", float),
                          ("uvi_peak", float), ("uvi_shade_factor", float),
                          ("uvi_noise_std", float),
                          ("uvi_threshold", float), ("gsv_period_s", int),
                          ("uv_period_s", int), ("sync_jitter_min", float),
                          ("wanderer_fraction", float),
                          ("dropout_prob", float), ("cloud_prob", float),
                          ("cloud_atten_dbhz", float),
                          ("cloud_uvi_factor", float), ("seed", int)):
            if key in doc:
                try:
                    kwargs[key] = cast(doc[key])
                except (TypeError, ValueError) as exc:
                    raise ConfigError(key, f"bad value: {exc}")
        try:
            config = cls(name=str(doc["name"]),
                         latitude_deg=float(doc["latitude_deg"]),
                         longitude_deg=float(doc["longitude_deg"]),
                         days=days, occluders=occluders, **kwargs)
        except KeyError as exc:
            raise ConfigError(str(exc), "missing required field")
        config.validate()
        return config


@dataclass(frozen=True)
class MinuteTruth:
    minute: datetime
    sun_occluded: bool
    label: str  # "sun" | "shade"
    sat_occluded: dict


@dataclass
class SceneTruth:
    minutes: list

    def to_csv(self) -> str:
        lines = ["minute_utc,sun_occluded,label"]
        for m in self.minutes:
            lines.append(f"{m.minute.strftime('%Y-%m-%dT%H:%M:%SZ')},"
                         f"{int(m.sun_occluded)},{m.label}")
        return "\n".join(lines) + "\n"


@dataclass
class DayOutput:
    date: date_type
    nmea_text: str
    uv_text: str


@dataclass
class SimulationResult:
    config: SceneConfig
    days: list
    truth: SceneTruth
    emitted: list = field(default_factory=list)
    # emitted: (talker, svid, elevation, azimuth, cn0 | None, minute)


def _contains_vec(occluders, az_arr, el_arr):
    """Vectorized occlusion test over azimuth/elevation arrays."""
    out = np.zeros(np.shape(az_arr), dtype=bool)
    az = np.asarray(az_arr) % 360.0
    el = np.asarray(el_arr)
    for o in occluders:
        lo = o.azimuth_min_deg % 360.0
        hi = o.azimuth_max_deg % 360.0
        if lo <= hi:
            inside = (az >= lo) & (az <= hi)
        else:
            inside = (az >= lo) | (az <= hi)
        out |= inside & (el < o.elevation_mask_deg)
    return out


def _satellite_ids(n: int) -> list:
    ids = []
    cursors = {t: 0 for t in TALKERS}
    i = 0
    while len(ids) < n:
        talker = TALKERS[i % len(TALKERS)]
        pool = _SVID_POOLS[talker]
        if cursors[talker] < len(pool):
            ids.append((talker, pool[cursors[talker]]))
            cursors[talker] += 1
        i += 1
    return ids


def _nmea_line(body: str) -> str:
    acc = 0
    for ch in body:
        acc ^= ord(ch)
    return f"${body}*{acc:02X}"


def _fmt_coord(value: float, is_lon: bool) -> tuple[str, str]:
    hemis = ("E", "W") if is_lon else ("N", "S")
    hemi = hemis[0] if value >= 0 else hemis[1]
    a = abs(value)
    dd = int(a)
    mm = (a - dd) * 60.0
    if mm >= 59.99995:
        dd += 1
        mm = 0.0
    width = 3 if is_lon else 2
    return f"{dd:0{width}d}{mm:07.4f}", hemi


def _rmc_line(when: datetime, lat: float, lon: float) -> str:
    lat_s, ns = _fmt_coord(lat, is_lon=False)
    lon_s, ew = _fmt_coord(lon, is_lon=True)
    body = (f"GNRMC,{when.strftime('%H%M%S')}.00,A,{lat_s},{ns},"
            f"{lon_s},{ew},0.0,0.0,{when.strftime('%d%m%y')},,,A")
    return _nmea_line(body)


def _gsv_lines(talker: str, sats: list) -> list:
    """sats: list of (svid, el_int, az_int, cn0_int | None)."""
    total = (len(sats) + 3) // 4
    lines = []
    for msg in range(total):
        chunk = sats[msg * 4:(msg + 1) * 4]
        parts = [f"{talker}GSV", str(total), str(msg + 1),
                 f"{len(sats):02d}"]
        for svid, el, az, cn0 in chunk:
            parts.extend([f"{svid:02d}", f"{el:02d}", f"{az:03d}",
                          "" if cn0 is None else f"{cn0:02d}"])
        lines.append(_nmea_line(",".join(parts)))
    return lines


_RAMP_CAP_DEG = 200.0


@dataclass
class _Arc:
    """One satellite-day trajectory.

    The azimuth sweep is anchored on its occluder-sector transit
    [t_e, t_x] with linear approach/departure ramps (capped so a long
    ramp cannot wrap into the sector from the far side). The elevation
    bow and visibility window are drawn independently of the transit, so
    a satellite's sky position alone says nothing about transit timing.
    """
    t_rise: float
    t_set: float
    t_e: float
    t_x: float
    az_enter: float
    az_exit: float
    direction: int
    r_pre: float
    r_post: float
    el_max: float

    def azimuth(self, t_min):
        t = np.asarray(t_min, dtype=np.float64)
        span = max(self.t_x - self.t_e, 1e-9)
        inside = self.az_enter + (self.az_exit - self.az_enter) \
            * (t - self.t_e) / span
        before = self.az_enter - self.direction * np.minimum(
            self.r_pre * (self.t_e - t), _RAMP_CAP_DEG)
        after = self.az_exit + self.direction * np.minimum(
            self.r_post * (t - self.t_x), _RAMP_CAP_DEG)
        out = np.where(t < self.t_e, before,
                       np.where(t > self.t_x, after, inside))
        return out % 360.0

    def elevation(self, t_min):
        u = (np.asarray(t_min, dtype=np.float64) - self.t_rise) \
            / (self.t_set - self.t_rise)
        return self.el_max * np.sin(np.pi * np.clip(u, 0.0, 1.0))


def _draw_arc(rng, n_min: float, sector: Occluder, sun_t1: float,
              sun_t2: float, jitter_min: float,
              wanderer_fraction: float) -> _Arc:
    """Draw one satellite-day arc. Trackers transit the occluded sector in
    near-sync with the sun; wanderers transit a random pseudo-sector at a
    random time."""
    wanderer = bool(rng.random() < wanderer_fraction)
    jit1 = float(rng.normal(0.0, jitter_min))
    jit2 = float(rng.normal(0.0, jitter_min))
    direction = 1 if rng.random() < 0.75 else -1
    rise_hi = max(n_min - 350.0, -90.0)  # keeps short windows sane
    t_rise = float(rng.uniform(-150.0, rise_hi))
    duration = float(rng.uniform(420.0, 900.0))
    r_pre = float(rng.uniform(8.0, 22.0)) / 60.0   # deg per minute
    r_post = float(rng.uniform(8.0, 22.0)) / 60.0
    el_max = float(rng.uniform(28.0, 78.0))
    dwell = sun_t2 - sun_t1
    psi = float(rng.uniform(0.0, 360.0))
    stretch = float(rng.uniform(0.6, 1.4))
    start_frac = float(rng.uniform(-0.2, 1.0))

    lo = sector.azimuth_min_deg
    hi = sector.azimuth_max_deg
    if wanderer:
        width = (hi - lo) % 360.0
        lo = psi
        hi = psi + width
        length = max(20.0, dwell * stretch)
        t_e = start_frac * n_min - 0.5 * length
        t_x = t_e + length
    else:
        t_e = sun_t1 + jit1
        t_x = sun_t2 + jit2
        if t_x - t_e < 20.0:
            t_x = t_e + 20.0
    az_enter, az_exit = (lo, hi) if direction > 0 else (hi, lo)
    return _Arc(t_rise=t_rise, t_set=t_rise + duration, t_e=t_e, t_x=t_x,
                az_enter=az_enter, az_exit=az_exit, direction=direction,
                r_pre=r_pre, r_post=r_post, el_max=el_max)


def _simulate_day(config: SceneConfig, day_index: int):
    window: DayWindow = config.days[day_index]
    occluders = config.occluders[day_index]
    rng = np.random.default_rng(
        np.random.SeedSequence((config.seed, day_index)))
    n_min = window.n_minutes()
    start = window.start()
    minutes = [start + timedelta(minutes=i) for i in range(n_min)]

    sun_az, sun_el = ephemeris.solar_positions(
        config.latitude_deg, config.longitude_deg, minutes)
    sun_occ = _contains_vec(occluders, sun_az, sun_el)
    cloudy = rng.random(n_min) < config.cloud_prob
    clear_uvi = config.uvi_peak * np.maximum(0.0, np.sin(
        np.radians(sun_el))) ** 1.2
    # noise-free modeled UVI drives the truth label; clouds screen both
    # the sun and every satellite for their minute
    model_uvi = (clear_uvi
                 * np.where(sun_occ, config.uvi_shade_factor, 1.0)
                 * np.where(cloudy, config.cloud_uvi_factor, 1.0))
    shade = model_uvi < config.uvi_threshold

    occ_idx = np.nonzero(sun_occ)[0]
    if occ_idx.size:
        sun_t1, sun_t2 = float(occ_idx[0]), float(occ_idx[-1] + 1)
    else:
        sun_t1, sun_t2 = 0.25 * n_min, 0.75 * n_min
    if occluders:
        # sync envelope: first wall's near edge to last wall's far edge,
        # so a linear sweep crosses every segment in step with the sun
        sector = Occluder(
            azimuth_min_deg=min(o.azimuth_min_deg for o in occluders),
            azimuth_max_deg=max(o.azimuth_max_deg for o in occluders),
            elevation_mask_deg=max(o.elevation_mask_deg
                                   for o in occluders))
    else:
        sector = Occluder(0.0, 120.0, 85.0)
    wander_frac = config.wanderer_fraction if occ_idx.size else 1.0

    sat_ids = _satellite_ids(config.n_satellites)
    arcs = [_draw_arc(rng, n_min, sector, sun_t1, sun_t2,
                      config.sync_jitter_min, wander_frac)
            for _ in sat_ids]

    # per-epoch satellite grids
    period = config.gsv_period_s
    epochs_per_min = 60 // period
    n_epochs = n_min * epochs_per_min
    t_grid = np.arange(n_epochs) / float(epochs_per_min)
    az_grid = np.empty((len(sat_ids), n_epochs))
    el_grid = np.empty((len(sat_ids), n_epochs))
    vis_grid = np.zeros((len(sat_ids), n_epochs), dtype=bool)
    for s, arc in enumerate(arcs):
        az_grid[s] = arc.azimuth(t_grid)
        el_grid[s] = arc.elevation(t_grid)
        vis_grid[s] = ((t_grid >= arc.t_rise) & (t_grid <= arc.t_set)
                       & (el_grid[s] >= MIN_VISIBLE_ELEVATION))
    occ_grid = _contains_vec(occluders, az_grid, el_grid)
    noise = rng.normal(0.0, config.cn0_noise_std,
                       size=(len(sat_ids), n_epochs))
    dropout = rng.random(size=(len(sat_ids), n_epochs)) \
        < config.dropout_prob
    cloud_epoch = np.repeat(cloudy, epochs_per_min)
    cn0_grid = (config.cn0_base_dbhz
                * np.sin(np.radians(np.maximum(el_grid, 1.0)))
                ** config.cn0_elevation_taper
                - config.cn0_attenuation_dbhz * occ_grid
                - config.cloud_atten_dbhz * cloud_epoch[None, :] + noise)
    cn0_int = np.clip(np.rint(cn0_grid), 10, 55).astype(int)
    az_int = np.rint(az_grid).astype(int) % 360
    el_int = np.clip(np.rint(el_grid), 0, 90).astype(int)

    # UV trace at uv_period resolution
    uv_period = config.uv_period_s
    n_uv = n_min * (60 // uv_period)
    t_uv = np.arange(n_uv) * (uv_period / 60.0)
    el_uv = np.interp(t_uv, np.arange(n_min, dtype=np.float64), sun_el)
    minute_of = np.minimum(t_uv.astype(int), n_min - 1)
    uvi = (config.uvi_peak
           * np.maximum(0.0, np.sin(np.radians(el_uv))) ** 1.2
           * np.where(sun_occ[minute_of], config.uvi_shade_factor, 1.0)
           * np.where(cloudy[minute_of], config.cloud_uvi_factor, 1.0)
           + rng.normal(0.0, config.uvi_noise_std, size=n_uv))
    uvi = np.maximum(uvi, 0.0)
    uva = uvi * 24.0
    uvb = uvi * 1.6

    uv_lines = ["timestamp,uva,uvb,uvi"]
    for k in range(n_uv):
        when = start + timedelta(seconds=k * uv_period)
        uv_lines.append(f"{when.strftime('%Y-%m-%dT%H:%M:%SZ')},"
                        f"{uva[k]:.3f},{uvb[k]:.3f},{uvi[k]:.4f}")
    uv_text = "\n".join(uv_lines) + "\n"

    nmea_lines = []
    emitted = []
    truth_minutes = []
    for i, minute in enumerate(minutes):
        nmea_lines.append(_rmc_line(minute, config.latitude_deg,
                                    config.longitude_deg))
        for sub in range(epochs_per_min):
            e = i * epochs_per_min + sub
            by_talker = {}
            for s, (talker, svid) in enumerate(sat_ids):
                if not vis_grid[s, e]:
                    continue
                cn0 = None if dropout[s, e] else int(cn0_int[s, e])
                entry = (svid, int(el_int[s, e]), int(az_int[s, e]), cn0)
                by_talker.setdefault(talker, []).append(entry)
                emitted.append((talker, svid, float(entry[1]),
                                float(entry[2]),
                                None if cn0 is None else float(cn0),
                                minute))
            for talker in TALKERS:
                if talker in by_talker:
                    nmea_lines.extend(_gsv_lines(talker,
                                                 by_talker[talker]))
        e0 = i * epochs_per_min
        sat_occluded = {sat_ids[s]: bool(occ_grid[s, e0])
                        for s in range(len(sat_ids)) if vis_grid[s, e0]}
        truth_minutes.append(MinuteTruth(
            minute=minute, sun_occluded=bool(sun_occ[i]),
            label="shade" if shade[i] else "sun",
            sat_occluded=sat_occluded))
    nmea_text = "\r\n".join(nmea_lines) + "\r\n"
    return DayOutput(date=window.date, nmea_text=nmea_text,
                     uv_text=uv_text), truth_minutes, emitted


def simulate(config: SceneConfig) -> SimulationResult:
    """Generate the scene. Deterministic: identical configs (including
    seed) produce byte-identical outputs."""
    config.validate()
    days = []
    truth = []
    emitted = []
    for k in range(len(config.days)):
        day_out, day_truth, day_emitted = _simulate_day(config, k)
        days.append(day_out)
        truth.extend(day_truth)
        emitted.extend(day_emitted)
    return SimulationResult(config=config, days=days,
                            truth=SceneTruth(minutes=truth),
                            emitted=emitted)


def write_scene(result: SimulationResult, out_dir, prefix=None) -> dict:
    """Write per-day NMEA/UV files plus the truth CSV. Returns paths."""
    from pathlib import Path
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    prefix = prefix or result.config.name
    paths = {"nmea": [], "uv": [], "truth": None}
    for i, day in enumerate(result.days, start=1):
        nmea_path = out / f"{prefix}_day{i}.nmea"
        uv_path = out / f"{prefix}_day{i}_uv.csv"
        nmea_path.write_text(day.nmea_text)
        uv_path.write_text(day.uv_text)
        paths["nmea"].append(str(nmea_path))
        paths["uv"].append(str(uv_path))
    truth_path = out / f"{prefix}_truth.csv"
    truth_path.write_text(result.truth.to_csv())
    paths["truth"] = str(truth_path)
    return paths


def _sector_for_window(lat: float, lon: float, window: DayWindow,
                       offset: float, length: float = 0.385,
                       el_mask: float = 85.0) -> Occluder:
    """Occluder whose sun transit covers the given fraction of the day
    window, [offset, offset + length]."""
    start = window.start()
    span_min = window.n_minutes()
    t_lo = start + timedelta(minutes=offset * span_min)
    t_hi = start + timedelta(minutes=min(offset + length, 1.0) * span_min)
    az_lo = ephemeris.solar_position(lat, lon, t_lo).azimuth_deg
    az_hi = ephemeris.solar_position(lat, lon, t_hi).azimuth_deg
    return Occluder(azimuth_min_deg=az_lo - 0.01,
                    azimuth_max_deg=az_hi + 0.01,
                    elevation_mask_deg=el_mask)


def default_scenes() -> tuple[SceneConfig, SceneConfig]:
    """The two built-in scenes.

    Scene A: four September days at one rural site, the rig set at a
    different spot around a wall each day, so the occluded sector covers a
    different half of the sun's transit per day. Scene B: one November day
    at a nearby site with its own wall geometry, for cross-scene tests.
    """
    lat_a, lon_a = 35.66, -0.45
    days_a = [DayWindow(date_type(2021, 9, 21), 6.0, 18.0),
              DayWindow(date_type(2021, 9, 25), 6.0, 18.0),
              DayWindow(date_type(2021, 9, 27), 6.0, 18.0),
              DayWindow(date_type(2021, 9, 30), 6.0, 18.0)]
    offsets_a = [0.05, 0.19, 0.32, 0.45]
    occluders_a = [[_sector_for_window(lat_a, lon_a, w, o, length=0.37)]
                   for w, o in zip(days_a, offsets_a)]
    scene_a = SceneConfig(name="scene-a", latitude_deg=lat_a,
                          longitude_deg=lon_a, days=days_a,
                          occluders=occluders_a, seed=42)

    lat_b, lon_b = 35.662, -0.448
    days_b = [DayWindow(date_type(2021, 11, 4), 7.0, 16.6667)]
    occluders_b = [[_sector_for_window(lat_b, lon_b, days_b[0], 0.27)]]
    scene_b = SceneConfig(name="scene-b", latitude_deg=lat_b,
                          longitude_deg=lon_b, days=days_b,
                          occluders=occluders_b, seed=20211104)
    return scene_a, scene_b
