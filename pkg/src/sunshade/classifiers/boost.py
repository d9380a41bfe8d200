"""AdaBoost over depth-1 stumps with SAMME weighting."""

from __future__ import annotations

import numpy as np


def _best_stump(X, y, w, orders):
    """Minimum weighted-error decision stump.

    Returns (err, feature, threshold, pred_le, pred_gt) or None when no
    feature admits a split. Ties resolve to the lowest feature index and
    lowest threshold."""
    best = None
    tot1 = float(w[y == 1].sum())
    tot0 = float(w.sum()) - tot1
    for f in range(X.shape[1]):
        order = orders[:, f]
        sv = X[order, f]
        cut = np.nonzero(sv[1:] > sv[:-1])[0]
        if cut.size == 0:
            continue
        sw = w[order]
        sy = y[order]
        w1 = np.cumsum(sw * (sy == 1))[cut]
        w0 = np.cumsum(sw * (sy == 0))[cut]
        # polarity (pred_le=1, pred_gt=0): wrong on left 0s and right 1s
        err_a = w0 + (tot1 - w1)
        err_b = w1 + (tot0 - w0)
        k_a = int(np.argmin(err_a))
        k_b = int(np.argmin(err_b))
        for k, err, ple in ((k_a, float(err_a[k_a]), 1),
                            (k_b, float(err_b[k_b]), 0)):
            if best is None or err < best[0] - 1e-15:
                thr = (sv[cut[k]] + sv[cut[k] + 1]) / 2.0
                best = (err, f, thr, ple, 1 - ple)
    return best


class AdaBoostModel:
    """Stage-wise weighted stumps; each stump votes with weight
    log((1-err)/err). Prediction is the weighted vote, ties to class 0."""

    def __init__(self, stumps, fallback_class=0):
        self.stumps = stumps  # (feature, threshold, pred_le, pred_gt, a)
        self.fallback_class = fallback_class

    @classmethod
    def fit(cls, X, y, hyper, seed):
        n = X.shape[0]
        w = np.full(n, 1.0 / n)
        orders = np.argsort(X, axis=0, kind="stable")
        stumps = []
        fallback = int(np.bincount(y, minlength=2).argmax())
        for _ in range(int(hyper["n_estimators"])):
            found = _best_stump(X, y, w, orders)
            if found is None:
                break
            err, f, thr, ple, pgt = found
            if err < 1e-12:
                stumps.append((f, thr, ple, pgt, 35.0))
                break
            alpha = float(np.log((1.0 - err) / err))
            if alpha <= 0.0:
                break
            stumps.append((f, thr, ple, pgt, alpha))
            pred = np.where(X[:, f] <= thr, ple, pgt)
            w = w * np.exp(alpha * (pred != y))
            w = w / w.sum()
        return cls(stumps, fallback)

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        if not self.stumps:
            return np.full(X.shape[0], self.fallback_class, dtype=np.int64)
        score = np.zeros(X.shape[0])
        for f, thr, ple, pgt, alpha in self.stumps:
            pred = np.where(X[:, f] <= thr, ple, pgt)
            score += alpha * (2.0 * pred - 1.0)
        return (score > 0.0).astype(np.int64)

    def to_state(self):
        return {"stumps": [list(s) for s in self.stumps],
                "fallback_class": self.fallback_class}

    @classmethod
    def from_state(cls, state):
        stumps = [(int(f), float(t), int(a), int(b), float(al))
                  for f, t, a, b, al in state["stumps"]]
        return cls(stumps, int(state["fallback_class"]))
