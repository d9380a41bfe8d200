import io
from datetime import date

import pytest

from sunshade import features, groundtruth, nmea, scenesim
from sunshade.scenesim import DayWindow, Occluder, SceneConfig


def small_scene_config(seed=7, days=2, n_satellites=4,
                       start_hour=9.0, end_hour=11.0):
    """A fast two-hour scene for unit tests (seconds to simulate)."""
    day_list = [DayWindow(date(2021, 9, 21 + k), start_hour, end_hour)
                for k in range(days)]
    # sun azimuth runs ~125->160 deg over 09:00-11:00 UTC at this site;
    # a ~14 deg sector shades roughly a third of each day's minutes
    occluders = [[Occluder(azimuth_min_deg=128.0 + 5.0 * k,
                           azimuth_max_deg=142.0 + 5.0 * k,
                           elevation_mask_deg=85.0)]
                 for k in range(days)]
    return SceneConfig(
        name="small", latitude_deg=35.66, longitude_deg=-0.45,
        days=day_list, occluders=occluders, n_satellites=n_satellites,
        seed=seed)


def run_pipeline(result):
    """Parse a SimulationResult's outputs through the real pipeline."""
    observations, fixes, samples = [], [], []
    skipped = 0
    for day in result.days:
        parsed = nmea.parse_log(io.StringIO(day.nmea_text))
        observations.extend(parsed.observations)
        fixes.extend(parsed.fixes)
        uv, n_skip = groundtruth.parse_uv_csv(io.StringIO(day.uv_text))
        samples.extend(uv)
        skipped += n_skip
    return features.featurize(observations, fixes, samples,
                              uv_skipped=skipped)


@pytest.fixture(scope="session")
def small_scene():
    config = small_scene_config()
    return config, scenesim.simulate(config)


@pytest.fixture(scope="session")
def small_rows(small_scene):
    _, result = small_scene
    rows, info = run_pipeline(result)
    return rows
