"""Gaussian naive Bayes with variance smoothing."""

from __future__ import annotations

import numpy as np


class GaussianNBModel:
    def __init__(self, means, variances, log_priors):
        self.means = means
        self.variances = variances
        self.log_priors = log_priors

    @classmethod
    def fit(cls, X, y, hyper, seed):
        smoothing = float(hyper["var_smoothing"])
        epsilon = smoothing * float(X.var(axis=0).max())
        means, variances, log_priors = [], [], []
        for cls_id in (0, 1):
            Xc = X[y == cls_id]
            means.append(Xc.mean(axis=0))
            variances.append(Xc.var(axis=0) + epsilon)
            log_priors.append(float(np.log(len(Xc) / X.shape[0])))
        return cls(means=means, variances=variances, log_priors=log_priors)

    def _scores(self, X):
        scores = np.empty((X.shape[0], 2))
        for k in (0, 1):
            var = self.variances[k]
            diff = X - self.means[k]
            ll = -0.5 * (np.log(2.0 * np.pi * var) + diff * diff / var)
            scores[:, k] = ll.sum(axis=1) + self.log_priors[k]
        return scores

    def predict(self, X):
        s = self._scores(np.asarray(X, dtype=np.float64))
        return (s[:, 1] > s[:, 0]).astype(np.int64)

    def to_state(self):
        return {"means": [m.tolist() for m in self.means],
                "variances": [v.tolist() for v in self.variances],
                "log_priors": self.log_priors}

    @classmethod
    def from_state(cls, state):
        return cls([np.array(m, dtype=np.float64) for m in state["means"]],
                   [np.array(v, dtype=np.float64)
                    for v in state["variances"]],
                   [float(p) for p in state["log_priors"]])
