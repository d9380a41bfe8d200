#!/usr/bin/env python3
"""Generate tests/fixtures/solar_oracle.csv from a trusted ephemeris.

The fixture is frozen test data: 100 random (lat, lon, utc) samples with
reference azimuth/elevation, used to gate the in-tree solar position
implementation. It is generated ONCE from an independent high-accuracy
ephemeris and committed; this script only exists to document/refresh that
process.

Supported reference backends:
  * pvlib (``pip install pvlib``), or
  * an NREL SPA port exposing ``observed_sunpos(dt, lat, lon, elev,
    pressure=..., delta_t=..., jit=...)`` -> (azimuth, zenith), passed via
    ``--spa-module path/to/sunposition.py``.

Rows with |elevation| > 85 deg are rejected (azimuth is numerically
degenerate near the zenith and a comparison there is meaningless).
"""

import argparse
import csv
import importlib.util
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np


def load_spa(path):
    spec = importlib.util.spec_from_file_location("spa_reference", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def reference_fn(args):
    if args.spa_module:
        spa = load_spa(args.spa_module)

        def ref(lat, lon, when):
            az, zen = spa.observed_sunpos(when, lat, lon, 0, pressure=0,
                                          delta_t=0, jit=False)
            return float(az), 90.0 - float(zen)

        return ref

    import pandas as pd  # noqa: F401
    import pvlib

    def ref(lat, lon, when):
        times = pd.DatetimeIndex([when])
        sp = pvlib.solarposition.get_solarposition(times, lat, lon)
        return float(sp["azimuth"].iloc[0]), float(sp["elevation"].iloc[0])

    return ref


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spa-module", default=None,
                    help="path to a standalone NREL SPA port")
    ap.add_argument("--out", default="tests/fixtures/solar_oracle.csv")
    ap.add_argument("--rows", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20210921)
    args = ap.parse_args()

    ref = reference_fn(args)
    rng = np.random.default_rng(args.seed)
    t0 = datetime(1950, 1, 2, tzinfo=timezone.utc)
    t1 = datetime(2050, 12, 30, tzinfo=timezone.utc)
    span = (t1 - t0).total_seconds()

    rows = []
    while len(rows) < args.rows:
        lat = float(rng.uniform(-65.0, 65.0))
        lon = float(rng.uniform(-180.0, 180.0))
        when = t0 + timedelta(seconds=float(rng.uniform(0.0, span)))
        when = when.replace(microsecond=0)
        az, el = ref(lat, lon, when)
        if abs(el) > 85.0:
            continue
        rows.append((f"{lat:.6f}", f"{lon:.6f}",
                     when.strftime("%Y-%m-%dT%H:%M:%SZ"),
                     f"{az:.6f}", f"{el:.6f}"))

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lat", "lon", "utc_iso8601", "azimuth_deg",
                    "elevation_deg"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
