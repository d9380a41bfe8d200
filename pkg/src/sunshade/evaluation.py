"""Benchmark harness: leave-one-day-out CV, permutation importance,
feature-set ablation, and cross-scene evaluation.

Class balance is enforced by undersampling the majority class in the
training fold only. All metrics are macro-averaged over the two classes.
Every random choice derives its stream from (base seed, task identity),
so results do not depend on scheduling or row order.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from sunshade import classifiers
from sunshade.classifiers import ClassifierSpec, TrainedModel
from sunshade.errors import LengthMismatchError, SingleClassError
from sunshade.features import (DISPLAY_NAMES, FeatureRow, FeatureSetMask,
                               all_mask_codes, apply_mask, label_vector,
                               standardize_apply, standardize_fit)
from sunshade.groundtruth import SunShadeLabel

CLASS_NAMES = ("shade", "sun")


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    confusion: tuple  # confusion[actual][predicted], classes (shade, sun)

    def as_dict(self) -> dict:
        return {"accuracy": self.accuracy, "precision": self.precision,
                "recall": self.recall, "f1": self.f1,
                "confusion": [list(row) for row in self.confusion]}


@dataclass(frozen=True)
class FoldPattern:
    name: str
    training_days: frozenset
    test_day: object

    def as_dict(self) -> dict:
        return {"name": self.name,
                "training_days": sorted(d.isoformat()
                                        for d in self.training_days),
                "test_day": self.test_day.isoformat()}


@dataclass
class CvResult:
    spec: ClassifierSpec
    per_pattern: list  # (FoldPattern, Metrics)
    mean: Metrics
    minute_mean: Optional[Metrics] = None


@dataclass(frozen=True)
class ImportanceEntry:
    feature_name: str
    mean_drop: float
    std_dev: float


def _derive_seed(*parts) -> int:
    """Stable 63-bit seed from mixed string/int identifiers."""
    tokens = []
    for p in parts:
        if isinstance(p, str):
            tokens.append(zlib.crc32(p.encode()))
        else:
            tokens.append(int(p) & 0xFFFFFFFF)
    ss = np.random.SeedSequence(tokens)
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> 1)


def build_patterns(rows) -> list[FoldPattern]:
    """Leave-one-day-out folds. Mirroring the usual presentation,
    Pattern-1 tests the newest day and trains on the rest."""
    days = sorted({r.day() for r in rows})
    if len(days) < 2:
        raise SingleClassError("need at least two distinct days for "
                               "leave-one-day-out CV")
    patterns = []
    for i, test_day in enumerate(reversed(days), start=1):
        patterns.append(FoldPattern(
            name=f"Pattern-{i}",
            training_days=frozenset(d for d in days if d != test_day),
            test_day=test_day))
    return patterns


def balance_classes(rows, seed: int) -> list[FeatureRow]:
    """Undersample the majority class to the minority count, uniformly
    without replacement, deterministic in `seed`.

    Rows are handled in canonical (sat_key, minute) order, so the result
    is independent of the caller's row ordering."""
    order = sorted(range(len(rows)),
                   key=lambda i: (rows[i].sat_key, rows[i].minute))
    idx_shade = [i for i in order
                 if rows[i].label is SunShadeLabel.SHADE]
    idx_sun = [i for i in order if rows[i].label is SunShadeLabel.SUN]
    if not idx_shade or not idx_sun:
        raise SingleClassError("both classes required for balancing")
    if len(idx_shade) == len(idx_sun):
        return [rows[i] for i in order]
    rng = np.random.default_rng(seed)
    if len(idx_shade) > len(idx_sun):
        keep = rng.choice(len(idx_shade), size=len(idx_sun),
                          replace=False)
        kept = set(idx_shade[i] for i in keep) | set(idx_sun)
    else:
        keep = rng.choice(len(idx_sun), size=len(idx_shade),
                          replace=False)
        kept = set(idx_shade) | set(idx_sun[i] for i in keep)
    return [rows[i] for i in order if i in kept]


def compute_metrics(predicted, actual) -> Metrics:
    """Macro-averaged metrics from the 2x2 confusion matrix. Per-class
    precision/recall with a zero denominator count as 0."""
    predicted = np.asarray(predicted, dtype=np.int64)
    actual = np.asarray(actual, dtype=np.int64)
    if predicted.shape != actual.shape or predicted.ndim != 1:
        raise LengthMismatchError(
            f"predicted {predicted.shape} vs actual {actual.shape}")
    if predicted.size == 0:
        raise LengthMismatchError("empty prediction vector")
    conf = np.zeros((2, 2), dtype=np.int64)
    for a in (0, 1):
        for p in (0, 1):
            conf[a, p] = int(np.sum((actual == a) & (predicted == p)))
    n = predicted.size
    accuracy = float((conf[0, 0] + conf[1, 1]) / n)
    precisions, recalls, f1s = [], [], []
    for c in (0, 1):
        pred_c = int(conf[0, c] + conf[1, c])
        act_c = int(conf[c, 0] + conf[c, 1])
        prec = conf[c, c] / pred_c if pred_c else 0.0
        rec = conf[c, c] / act_c if act_c else 0.0
        f1 = 2 * prec * rec / (prec + rec) if (prec + rec) else 0.0
        precisions.append(prec)
        recalls.append(rec)
        f1s.append(f1)
    return Metrics(accuracy=accuracy,
                   precision=float(np.mean(precisions)),
                   recall=float(np.mean(recalls)),
                   f1=float(np.mean(f1s)),
                   confusion=tuple(tuple(int(v) for v in row)
                                   for row in conf))


def mean_metrics(parts: list[Metrics]) -> Metrics:
    conf = np.zeros((2, 2), dtype=np.int64)
    for m in parts:
        conf += np.asarray(m.confusion)
    return Metrics(
        accuracy=float(np.mean([m.accuracy for m in parts])),
        precision=float(np.mean([m.precision for m in parts])),
        recall=float(np.mean([m.recall for m in parts])),
        f1=float(np.mean([m.f1 for m in parts])),
        confusion=tuple(tuple(int(v) for v in row) for row in conf))


def shuffle_labels(rows, seed: int) -> list[FeatureRow]:
    """Rows with labels permuted uniformly at random (null model)."""
    rng = np.random.default_rng(seed)
    labels = [r.label for r in rows]
    perm = rng.permutation(len(labels))
    return [replace(r, label=labels[perm[i]])
            for i, r in enumerate(rows)]


def _fit_fold(spec: ClassifierSpec, mask: FeatureSetMask, train_rows,
              base_seed: int, pattern_name: str, standardize: bool,
              audit: Optional[Callable]) -> TrainedModel:
    balanced = balance_classes(
        train_rows,
        _derive_seed(base_seed, "balance", spec.method.value, pattern_name,
                     mask.code))
    X, names = apply_mask(balanced, mask)
    y = label_vector(balanced)
    stats = standardize_fit(X) if standardize else None
    if audit is not None:
        audit({"event": "standardizer", "method": spec.method.value,
               "pattern": pattern_name, "mask": mask.code,
               "stats": stats, "n_train": len(balanced),
               "train_rows": balanced})
    Xz = standardize_apply(X, stats) if standardize else X
    fold_spec = replace(
        spec, seed=_derive_seed(base_seed, "train", spec.method.value,
                                pattern_name, mask.code))
    return classifiers.train(fold_spec, Xz, y, standardizer=stats,
                             mask=mask, feature_names=names)


def _minute_vote(test_rows, predicted) -> Metrics:
    """Optional per-minute report: majority vote over a minute's rows
    (ties toward shade) against the minute's label."""
    votes: dict = {}
    for r, p in zip(test_rows, predicted):
        key = r.minute
        ones, total, actual = votes.get(key, (0, 0, 0))
        votes[key] = (ones + int(p), total + 1,
                      1 if r.label is SunShadeLabel.SUN else 0)
    minutes = sorted(votes)
    pred = np.array([1 if votes[m][0] * 2 > votes[m][1] else 0
                     for m in minutes])
    act = np.array([votes[m][2] for m in minutes])
    return compute_metrics(pred, act)


def evaluate_fold(spec: ClassifierSpec, mask: FeatureSetMask, rows,
                  pattern: FoldPattern, base_seed: int, standardize: bool,
                  per_minute: bool, audit: Optional[Callable] = None):
    train_rows = [r for r in rows if r.day() in pattern.training_days]
    test_rows = [r for r in rows if r.day() == pattern.test_day]
    if audit is not None:
        audit({"event": "split", "method": spec.method.value,
               "pattern": pattern.name, "mask": mask.code,
               "train_days": sorted(d.isoformat()
                                    for d in {r.day()
                                              for r in train_rows}),
               "test_day": pattern.test_day.isoformat(),
               "n_train": len(train_rows), "n_test": len(test_rows)})
    model = _fit_fold(spec, mask, train_rows, base_seed, pattern.name,
                      standardize, audit)
    X_test, _ = apply_mask(test_rows, mask)
    y_test = label_vector(test_rows)
    predicted = model.predict(X_test)
    metrics = compute_metrics(predicted, y_test)
    minute_metrics = _minute_vote(test_rows, predicted) \
        if per_minute else None
    return metrics, minute_metrics


def run_cv(rows, patterns, specs, mask: FeatureSetMask, seed: int = 42,
           standardize: bool = True, per_minute: bool = False,
           jobs: int = 1,
           audit: Optional[Callable] = None) -> list[CvResult]:
    """Leave-one-day-out cross-validation of each spec on the mask.

    Per (method, pattern): balance the training fold, fit the
    standardizer on it, train, predict the held-out day, score. Results
    are reported per pattern and averaged across patterns."""
    mask.validate()
    day_set = {r.day() for r in rows}
    for p in patterns:
        if p.test_day not in day_set:
            raise LengthMismatchError(
                f"pattern {p.name} tests day {p.test_day} with no rows")
    tasks = [(spec, pattern) for spec in specs for pattern in patterns]

    def run_task(task):
        spec, pattern = task
        try:
            return evaluate_fold(spec, mask, rows, pattern, seed,
                                 standardize, per_minute, audit)
        except Exception as exc:
            raise type(exc)(
                f"{exc} [method={spec.method.value}, "
                f"pattern={pattern.name}]") from exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_task, tasks))
    else:
        outcomes = [run_task(t) for t in tasks]

    results = []
    for i, spec in enumerate(specs):
        fold_outcomes = outcomes[i * len(patterns):(i + 1) * len(patterns)]
        per_pattern = [(pattern, m)
                       for pattern, (m, _) in zip(patterns, fold_outcomes)]
        mean = mean_metrics([m for _, (m, _) in zip(patterns,
                                                    fold_outcomes)])
        minute_mean = None
        if per_minute:
            minute_mean = mean_metrics([mm for _, (_, mm)
                                        in zip(patterns, fold_outcomes)])
        results.append(CvResult(spec=spec, per_pattern=per_pattern,
                                mean=mean, minute_mean=minute_mean))
    return results


def permutation_importance(model: TrainedModel, X_test, y_test,
                           repeats: int = 10, seed: int = 42,
                           feature_names=None) -> list[ImportanceEntry]:
    """Accuracy drop when one feature column is shuffled on held-out
    data: mean and standard deviation over `repeats` fresh shuffles per
    feature. All features are reported, sorted by descending mean drop."""
    if repeats < 2:
        raise ValueError("repeats must be >= 2")
    X_test = np.asarray(X_test, dtype=np.float64)
    y_test = np.asarray(y_test, dtype=np.int64)
    names = feature_names or model.feature_names or [
        f"f{i}" for i in range(X_test.shape[1])]
    baseline = float(np.mean(model.predict(X_test) == y_test))
    entries = []
    for col, name in enumerate(names):
        drops = []
        for rep in range(repeats):
            rng = np.random.default_rng(
                _derive_seed(seed, "perm", col, rep))
            shuffled = X_test.copy()
            shuffled[:, col] = shuffled[rng.permutation(len(shuffled)),
                                        col]
            acc = float(np.mean(model.predict(shuffled) == y_test))
            drops.append(baseline - acc)
        entries.append(ImportanceEntry(
            feature_name=DISPLAY_NAMES.get(name, name),
            mean_drop=float(np.mean(drops)),
            std_dev=float(np.std(drops, ddof=1))))
    order = {e.feature_name: i for i, e in enumerate(entries)}
    return sorted(entries,
                  key=lambda e: (-e.mean_drop, order[e.feature_name]))


def run_ablation(rows, patterns, spec: ClassifierSpec, seed: int = 42,
                 standardize: bool = True, jobs: int = 1) -> dict:
    """CV metrics for each of the 14 feature-set combinations, keyed by
    mask code."""
    out = {}
    for code in all_mask_codes():
        mask = FeatureSetMask.from_code(code)
        result = run_cv(rows, patterns, [spec], mask, seed=seed,
                        standardize=standardize, jobs=jobs)[0]
        out[code] = result
    return out


def cross_scene_eval(train_rows, test_rows, spec: ClassifierSpec,
                     mask: FeatureSetMask, seed: int = 42,
                     standardize: bool = True
                     ) -> tuple[Metrics, TrainedModel]:
    """Train on all of one scene (balanced), test on all of another."""
    mask.validate()
    model = _fit_fold(spec, mask, train_rows, seed, "cross-scene",
                      standardize, None)
    X_test, _ = apply_mask(test_rows, mask)
    y_test = label_vector(test_rows)
    metrics = compute_metrics(model.predict(X_test), y_test)
    return metrics, model


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def render_cv_table(results: list[CvResult], minute_vote=False) -> str:
    """Aligned text table, methods sorted by descending mean accuracy."""
    rows = sorted(results, key=lambda r: (-r.mean.accuracy,
                                          r.spec.method.value))
    header = f"{'Method':22s} {'Accuracy':>9s} {'Recall':>9s} " \
             f"{'Precision':>10s} {'f1-score':>9s}"
    lines = [header, "-" * len(header)]
    for r in rows:
        m = r.minute_mean if minute_vote and r.minute_mean else r.mean
        title = classifiers.METHOD_TITLES[r.spec.method]
        lines.append(f"{title:22s} {m.accuracy:9.3f} {m.recall:9.3f} "
                     f"{m.precision:10.3f} {m.f1:9.3f}")
    return "\n".join(lines) + "\n"


def render_ablation_table(by_code: dict) -> str:
    header = f"{'Mask':6s} {'Accuracy':>9s} {'Recall':>9s} " \
             f"{'Precision':>10s} {'f1-score':>9s}"
    lines = [header, "-" * len(header)]
    for code in all_mask_codes():
        m = by_code[code].mean
        lines.append(f"{code:6s} {m.accuracy:9.3f} {m.recall:9.3f} "
                     f"{m.precision:10.3f} {m.f1:9.3f}")
    return "\n".join(lines) + "\n"


def render_importance_table(entries: list[ImportanceEntry]) -> str:
    header = f"{'Feature':12s} {'Weight':>8s} {'Std':>8s}"
    lines = [header, "-" * len(header)]
    for e in entries:
        lines.append(f"{e.feature_name:12s} {e.mean_drop:8.3f} "
                     f"{e.std_dev:8.3f}")
    return "\n".join(lines) + "\n"
