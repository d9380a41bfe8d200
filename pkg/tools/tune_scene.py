#!/usr/bin/env python3
"""Scene-tuning harness (development tool, not part of the package).

Builds scene A with command-line-overridable knobs, runs the pipeline,
and reports the quantities the acceptance gate cares about: row count,
balance, and SVM-RBF CV accuracy on the key masks.
"""

import argparse
import io
import time
from datetime import date

from sunshade import evaluation, features, groundtruth, nmea, scenesim
from sunshade.classifiers import ClassifierMethod, ClassifierSpec
from sunshade.features import FeatureSetMask
from sunshade.scenesim import DayWindow, SceneConfig, _sector_for_window


def build_scene(args):
    lat, lon = 35.66, -0.45
    days = [DayWindow(date(2021, 9, 21), args.start, args.end),
            DayWindow(date(2021, 9, 25), args.start, args.end),
            DayWindow(date(2021, 9, 27), args.start, args.end),
            DayWindow(date(2021, 9, 30), args.start, args.end)]
    offsets = [float(x) for x in args.offsets.split(",")]
    occluders = [[_sector_for_window(lat, lon, w, o, length=args.length)]
                 for w, o in zip(days, offsets)]
    return SceneConfig(
        name="tune", latitude_deg=lat, longitude_deg=lon, days=days,
        occluders=occluders, n_satellites=args.sats,
        cn0_attenuation_dbhz=args.atten, cn0_noise_std=args.noise,
        cn0_elevation_taper=args.taper,
        wanderer_fraction=args.wander, sync_jitter_min=args.jitter,
        seed=42)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--offsets", default="0.0,0.1667,0.3333,0.5")
    ap.add_argument("--length", type=float, default=0.385)
    ap.add_argument("--start", type=float, default=6.0)
    ap.add_argument("--end", type=float, default=18.0)
    ap.add_argument("--sats", type=int, default=11)
    ap.add_argument("--atten", type=float, default=10.0)
    ap.add_argument("--noise", type=float, default=7.0)
    ap.add_argument("--taper", type=float, default=0.15)
    ap.add_argument("--wander", type=float, default=0.07)
    ap.add_argument("--jitter", type=float, default=7.0)
    ap.add_argument("--masks", default="ABCD,-B--,-B-D,AB--,A---,--C-")
    ap.add_argument("--methods", default="")
    args = ap.parse_args()

    cfg = build_scene(args)
    res = scenesim.simulate(cfg)
    obs, fixes, samples = [], [], []
    for day in res.days:
        r = nmea.parse_log(io.StringIO(day.nmea_text))
        obs += r.observations
        fixes += r.fixes
        s, _ = groundtruth.parse_uv_csv(io.StringIO(day.uv_text))
        samples += s
    rows, info = features.featurize(obs, fixes, samples)
    print(f"rows={info.n_rows} shade_frac="
          f"{info.label_counts['shade'] / info.n_rows:.3f}")
    patterns = evaluation.build_patterns(rows)
    spec = ClassifierSpec(method=ClassifierMethod.SVM_RBF)
    for code in args.masks.split(","):
        t0 = time.time()
        r = evaluation.run_cv(rows, patterns, [spec],
                              FeatureSetMask.from_code(code), seed=42)[0]
        folds = " ".join(f"{m.accuracy:.3f}" for _, m in r.per_pattern)
        print(f"{code}: mean={r.mean.accuracy:.4f} [{folds}] "
              f"({time.time() - t0:.0f}s)")
    if args.methods:
        names = [m.strip() for m in args.methods.split(",")]
        specs = [ClassifierSpec(method=ClassifierMethod(n)) for n in names]
        t0 = time.time()
        results = evaluation.run_cv(rows, patterns, specs,
                                    FeatureSetMask.from_code("ABCD"),
                                    seed=42)
        for r in results:
            print(f"{r.spec.method.value}: {r.mean.accuracy:.4f}")
        print(f"(methods took {time.time() - t0:.0f}s)")


if __name__ == "__main__":
    main()
