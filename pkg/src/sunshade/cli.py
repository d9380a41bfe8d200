"""Command-line pipeline: simulate, parse, featurize, evaluate, ablate,
importance, cross-scene, replay.

Every command writes its outputs plus a manifest (resolved arguments,
input digests, output paths, timings). All randomness flows from --seed,
so identical invocations produce byte-identical reports; wall-clock
timings live only in the manifest. `replay <manifest>` re-runs the
recorded command.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import sunshade
from sunshade import classifiers, evaluation, features, nmea, scenesim
from sunshade._core import backend_name
from sunshade.classifiers import ClassifierMethod, ClassifierSpec
from sunshade.errors import ConfigError, InvalidMaskError, SunshadeError
from sunshade.features import FeatureSetMask

_METHOD_ALIASES = {m.value: m for m in ClassifierMethod}


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("SUNSHADE_OUT_DIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(out_dir: Path, command: str, args_dict: dict,
                    inputs: list, outputs: list, timings: dict) -> Path:
    doc = {
        "command": command,
        "tool_version": sunshade.__version__,
        "backend": backend_name(),
        "seed": args_dict.get("seed"),
        "args": args_dict,
        "inputs": [{"path": str(p), "sha256": _sha256(p)}
                   for p in inputs],
        "outputs": [str(p) for p in outputs],
        "timings_s": timings,
    }
    path = out_dir / f"{command.replace('-', '_')}_manifest.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def _parse_methods(text: str) -> list[ClassifierMethod]:
    if text.strip().lower() == "all":
        return list(ClassifierMethod)
    methods = []
    for name in text.split(","):
        name = name.strip()
        if name not in _METHOD_ALIASES:
            raise ConfigError("methods",
                              f"unknown method {name!r}; choices: "
                              f"{', '.join(_METHOD_ALIASES)} or 'all'")
        methods.append(_METHOD_ALIASES[name])
    return methods


def _load_rows(path):
    with open(path, newline="") as fh:
        return features.rows_from_csv(fh)


def _metrics_doc(result: evaluation.CvResult) -> dict:
    return {
        "method": result.spec.method.value,
        "mean": result.mean.as_dict(),
        "per_pattern": [
            {"pattern": p.as_dict(), "metrics": m.as_dict()}
            for p, m in result.per_pattern],
        **({"minute_mean": result.minute_mean.as_dict()}
           if result.minute_mean else {}),
    }


def cmd_simulate(args) -> int:
    out_dir = _out_dir(args)
    t0 = time.time()
    if args.config:
        config = scenesim.SceneConfig.from_json(
            Path(args.config).read_text())
    else:
        scene_a, scene_b = scenesim.default_scenes()
        config = {"default-a": scene_a, "default-b": scene_b}[args.scene]
    if args.seed is not None:
        config.seed = args.seed
    result = scenesim.simulate(config)
    paths = scenesim.write_scene(result, out_dir)
    t_total = time.time() - t0

    n_minutes = len(result.truth.minutes)
    n_shade = sum(1 for m in result.truth.minutes if m.label == "shade")
    print(f"scene {config.name}: {len(config.days)} day(s), "
          f"{n_minutes} minutes, {config.n_satellites} satellites")
    print(f"label balance: {n_shade} shade / {n_minutes - n_shade} sun "
          f"minutes")
    for p in paths["nmea"] + paths["uv"] + [paths["truth"]]:
        print(f"wrote {p}")
    outputs = paths["nmea"] + paths["uv"] + [paths["truth"]]
    _write_manifest(out_dir, "simulate",
                    {"scene": args.scene, "config": args.config,
                     "seed": config.seed},
                    [args.config] if args.config else [], outputs,
                    {"total": round(t_total, 3)})
    return 0


def cmd_parse(args) -> int:
    out_dir = _out_dir(args)
    t0 = time.time()
    observations = []
    stats_total = nmea.ParseStats()
    for path in args.nmea:
        with open(path, "r", errors="replace") as fh:
            result = nmea.parse_log(fh)
        observations.extend(result.observations)
        for field in vars(stats_total):
            setattr(stats_total, field,
                    getattr(stats_total, field)
                    + getattr(result.stats, field))
    out_csv = out_dir / (args.name or "observations.csv")
    with open(out_csv, "w", newline="") as fh:
        nmea.observations_to_csv(observations, fh)
    print(f"parsed {stats_total.sentences_parsed} sentences -> "
          f"{len(observations)} observations "
          f"({stats_total.checksum_failed} checksum failures, "
          f"{stats_total.malformed} malformed)")
    print(f"wrote {out_csv}")
    _write_manifest(out_dir, "parse",
                    {"nmea": list(args.nmea), "name": args.name,
                     "seed": None},
                    list(args.nmea), [out_csv],
                    {"total": round(time.time() - t0, 3)})
    return 0


def cmd_featurize(args) -> int:
    out_dir = _out_dir(args)
    t0 = time.time()
    if not args.uv:
        print("error: ground truth required: supply at least one UV CSV "
              "via --uv", file=sys.stderr)
        return 2
    observations, fixes, samples, skipped = features.parse_inputs(
        args.nmea, args.uv, args.uv_clock_offset)
    rows, info = features.featurize(observations, fixes, samples,
                                    threshold=args.threshold,
                                    uv_skipped=skipped)
    out_csv = out_dir / (args.name or "features.csv")
    with open(out_csv, "w", newline="") as fh:
        features.rows_to_csv(rows, fh)
    print(f"session position: ({info.session_latitude_deg:.5f}, "
          f"{info.session_longitude_deg:.5f})")
    print(f"{info.n_rows} feature rows "
          f"({info.dropped_rows} dropped for missing context/label); "
          f"labels: {info.label_counts['sun']} sun / "
          f"{info.label_counts['shade']} shade")
    print(f"wrote {out_csv}")
    _write_manifest(out_dir, "featurize",
                    {"nmea": list(args.nmea), "uv": list(args.uv),
                     "threshold": args.threshold,
                     "uv_clock_offset": args.uv_clock_offset,
                     "name": args.name, "seed": None},
                    list(args.nmea) + list(args.uv), [out_csv],
                    {"total": round(time.time() - t0, 3)})
    return 0


def _write_report(out_dir: Path, stem: str, text: str, doc: dict,
                  csv_text: str) -> list:
    text_path = out_dir / f"{stem}.txt"
    json_path = out_dir / f"{stem}.json"
    csv_path = out_dir / f"{stem}.csv"
    text_path.write_text(text)
    json_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    csv_path.write_text(csv_text)
    print(text, end="")
    for p in (text_path, json_path, csv_path):
        print(f"wrote {p}")
    return [text_path, json_path, csv_path]


def cmd_evaluate(args) -> int:
    out_dir = _out_dir(args)
    t0 = time.time()
    rows = _load_rows(args.features)
    mask = FeatureSetMask.from_code(args.mask)
    methods = _parse_methods(args.methods)
    patterns = evaluation.build_patterns(rows)
    specs = [ClassifierSpec(method=m) for m in methods]
    results = evaluation.run_cv(rows, patterns, specs, mask,
                                seed=args.seed,
                                standardize=not args.no_standardize,
                                per_minute=args.per_minute,
                                jobs=args.jobs)
    t_cv = time.time() - t0

    text = evaluation.render_cv_table(results)
    if args.per_minute:
        text += "\nPer-minute majority vote:\n"
        text += evaluation.render_cv_table(results, minute_vote=True)
    doc = {
        "report": "cross-validation",
        "mask": mask.code,
        "seed": args.seed,
        "standardized": not args.no_standardize,
        "patterns": [p.as_dict() for p in patterns],
        "methods": [_metrics_doc(r) for r in sorted(
            results, key=lambda r: (-r.mean.accuracy,
                                    r.spec.method.value))],
    }
    csv_lines = ["method,accuracy,recall,precision,f1"]
    for r in sorted(results, key=lambda r: (-r.mean.accuracy,
                                            r.spec.method.value)):
        m = r.mean
        csv_lines.append(f"{r.spec.method.value},{m.accuracy!r},"
                         f"{m.recall!r},{m.precision!r},{m.f1!r}")
    outputs = _write_report(out_dir, "evaluate_report", text, doc,
                            "\n".join(csv_lines) + "\n")
    _write_manifest(out_dir, "evaluate",
                    {"features": args.features, "methods": args.methods,
                     "mask": args.mask, "seed": args.seed,
                     "jobs": args.jobs, "per_minute": args.per_minute,
                     "no_standardize": args.no_standardize},
                    [args.features], outputs,
                    {"total": round(time.time() - t0, 3),
                     "cv": round(t_cv, 3)})
    return 0


def cmd_ablate(args) -> int:
    out_dir = _out_dir(args)
    t0 = time.time()
    rows = _load_rows(args.features)
    patterns = evaluation.build_patterns(rows)
    spec = ClassifierSpec(method=_parse_methods(args.method)[0])
    by_code = evaluation.run_ablation(rows, patterns, spec,
                                      seed=args.seed, jobs=args.jobs)
    text = evaluation.render_ablation_table(by_code)
    doc = {
        "report": "feature-set-ablation",
        "method": spec.method.value,
        "seed": args.seed,
        "masks": {code: _metrics_doc(r) for code, r in by_code.items()},
    }
    csv_lines = ["mask,accuracy,recall,precision,f1"]
    for code in features.all_mask_codes():
        m = by_code[code].mean
        csv_lines.append(f"{code},{m.accuracy!r},{m.recall!r},"
                         f"{m.precision!r},{m.f1!r}")
    outputs = _write_report(out_dir, "ablation_report", text, doc,
                            "\n".join(csv_lines) + "\n")
    _write_manifest(out_dir, "ablate",
                    {"features": args.features, "method": args.method,
                     "seed": args.seed, "jobs": args.jobs},
                    [args.features], outputs,
                    {"total": round(time.time() - t0, 3)})
    return 0


def cmd_importance(args) -> int:
    out_dir = _out_dir(args)
    t0 = time.time()
    rows = _load_rows(args.features)
    patterns = evaluation.build_patterns(rows)
    # hold out the newest day, train on the rest (Pattern-1 split)
    pattern = patterns[0]
    spec = ClassifierSpec(method=_parse_methods(args.method)[0])
    mask = FeatureSetMask.from_code("ABCD")
    train_rows = [r for r in rows if r.day() in pattern.training_days]
    test_rows = [r for r in rows if r.day() == pattern.test_day]
    model = evaluation._fit_fold(spec, mask, train_rows, args.seed,
                                 pattern.name, True, None)
    X_test, names = features.apply_mask(test_rows, mask)
    y_test = features.label_vector(test_rows)
    entries = evaluation.permutation_importance(
        model, X_test, y_test, repeats=args.repeats, seed=args.seed,
        feature_names=names)
    text = evaluation.render_importance_table(entries)
    doc = {
        "report": "permutation-importance",
        "method": spec.method.value,
        "seed": args.seed,
        "repeats": args.repeats,
        "test_day": pattern.test_day.isoformat(),
        "entries": [{"feature": e.feature_name,
                     "mean_drop": e.mean_drop, "std_dev": e.std_dev}
                    for e in entries],
    }
    csv_lines = ["feature,mean_drop,std_dev"]
    for e in entries:
        csv_lines.append(f"{e.feature_name},{e.mean_drop!r},"
                         f"{e.std_dev!r}")
    outputs = _write_report(out_dir, "importance_report", text, doc,
                            "\n".join(csv_lines) + "\n")
    if args.save_model:
        model_path = out_dir / "importance_model.json"
        model.save(model_path)
        outputs.append(model_path)
        print(f"wrote {model_path}")
    _write_manifest(out_dir, "importance",
                    {"features": args.features, "method": args.method,
                     "repeats": args.repeats, "seed": args.seed,
                     "save_model": args.save_model},
                    [args.features], outputs,
                    {"total": round(time.time() - t0, 3)})
    return 0


def cmd_cross_scene(args) -> int:
    out_dir = _out_dir(args)
    t0 = time.time()
    train_rows = _load_rows(args.train)
    test_rows = _load_rows(args.test)
    spec = ClassifierSpec(method=_parse_methods(args.method)[0])
    mask = FeatureSetMask.from_code(args.mask)
    metrics, model = evaluation.cross_scene_eval(
        train_rows, test_rows, spec, mask, seed=args.seed)
    header = f"{'Method':22s} {'Accuracy':>9s} {'Recall':>9s} " \
             f"{'Precision':>10s} {'f1-score':>9s}"
    title = classifiers.METHOD_TITLES[spec.method]
    text = "\n".join([
        header, "-" * len(header),
        f"{title:22s} {metrics.accuracy:9.3f} {metrics.recall:9.3f} "
        f"{metrics.precision:10.3f} {metrics.f1:9.3f}"]) + "\n"
    doc = {
        "report": "cross-scene",
        "method": spec.method.value,
        "mask": mask.code,
        "seed": args.seed,
        "train_rows": len(train_rows),
        "test_rows": len(test_rows),
        "metrics": metrics.as_dict(),
    }
    csv_text = ("method,accuracy,recall,precision,f1\n"
                f"{spec.method.value},{metrics.accuracy!r},"
                f"{metrics.recall!r},{metrics.precision!r},"
                f"{metrics.f1!r}\n")
    outputs = _write_report(out_dir, "cross_scene_report", text, doc,
                            csv_text)
    if args.save_model:
        model_path = out_dir / "cross_scene_model.json"
        model.save(model_path)
        outputs.append(model_path)
        print(f"wrote {model_path}")
    _write_manifest(out_dir, "cross-scene",
                    {"train": args.train, "test": args.test,
                     "method": args.method, "mask": args.mask,
                     "seed": args.seed, "save_model": args.save_model},
                    [args.train, args.test], outputs,
                    {"total": round(time.time() - t0, 3)})
    return 0


def cmd_replay(args) -> int:
    doc = json.loads(Path(args.manifest).read_text())
    command = doc["command"]
    saved = doc["args"]
    argv = [command]
    for key, value in saved.items():
        if value is None or value is False:
            continue
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif isinstance(value, list):
            argv.append(flag)
            argv.extend(str(v) for v in value)
        else:
            argv.extend([flag, str(value)])
    if args.out:
        argv.extend(["--out", args.out])
    print(f"replaying: sunshade {' '.join(argv)}")
    return main(argv)


def _add_common(parser, seed=True):
    parser.add_argument("--out", default=None,
                        help="output directory (default: $SUNSHADE_OUT_DIR"
                             " or '.')")
    if seed:
        parser.add_argument("--seed", type=int, default=42)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sunshade",
        description="Sun/shade classification from GNSS signal strength")
    parser.add_argument("--version", action="version",
                        version=f"sunshade {sunshade.__version__} "
                                f"({backend_name()} backend)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a synthetic scene")
    p.add_argument("--scene", choices=("default-a", "default-b"),
                   default="default-a")
    p.add_argument("--config", default=None,
                   help="scene config JSON (overrides --scene)")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=None,
                   help="override the scene's seed")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("parse", help="parse NMEA logs to an observation "
                                     "CSV")
    p.add_argument("--nmea", nargs="+", required=True)
    p.add_argument("--name", default=None, help="output CSV filename")
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("featurize", help="build the feature CSV from "
                                         "NMEA + UV logs")
    p.add_argument("--nmea", nargs="+", required=True)
    p.add_argument("--uv", nargs="*", default=[])
    p.add_argument("--threshold", type=float, default=0.35,
                   help="UV Index sun/shade threshold")
    p.add_argument("--uv-clock-offset", type=float, default=0.0,
                   help="seconds added to UV timestamps")
    p.add_argument("--name", default=None)
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser("evaluate", help="leave-one-day-out CV benchmark")
    p.add_argument("--features", required=True)
    p.add_argument("--methods", default="all")
    p.add_argument("--mask", default="ABCD")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--per-minute", action="store_true",
                   help="add a per-minute majority-vote report")
    p.add_argument("--no-standardize", action="store_true",
                   help="feed raw (unstandardized) features")
    _add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ablate", help="14-combination feature-set "
                                      "ablation")
    p.add_argument("--features", required=True)
    p.add_argument("--method", default="svm-rbf")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("importance", help="permutation feature importance")
    p.add_argument("--features", required=True)
    p.add_argument("--method", default="svm-rbf")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--save-model", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_importance)

    p = sub.add_parser("cross-scene", help="train on one scene, test on "
                                           "another")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--method", default="svm-rbf")
    p.add_argument("--mask", default="ABCD")
    p.add_argument("--save-model", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_cross_scene)

    p = sub.add_parser("replay", help="re-run the command recorded in a "
                                      "manifest")
    p.add_argument("manifest")
    p.add_argument("--out", default=None,
                   help="redirect outputs to a different directory")
    p.set_defaults(func=cmd_replay)
    return parser


def _join_dash_values(argv):
    """Let mask codes with a leading dash (e.g. ``--mask -B--``) survive
    argparse by joining them into ``--mask=-B--`` form."""
    out = []
    join_next = False
    for arg in argv:
        if join_next:
            out[-1] = f"{out[-1]}={arg}"
            join_next = False
            continue
        out.append(arg)
        if arg == "--mask" or arg == "--methods":
            join_next = True
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_dash_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidMaskError as exc:
        print(f"error: invalid mask: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SunshadeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
