"""k-nearest-neighbor classifier on Euclidean distance."""

from __future__ import annotations

import numpy as np

_CHUNK = 512


class KnnModel:
    """Stored-exemplar k-NN. Majority vote among the k nearest training
    points; with the default odd k a vote tie cannot occur, otherwise ties
    break toward the smaller class id (shade)."""

    def __init__(self, X, y, k):
        self.X = X
        self.y = y
        self.k = k

    @classmethod
    def fit(cls, X, y, hyper, seed):
        return cls(X=np.ascontiguousarray(X, dtype=np.float64),
                   y=np.asarray(y, dtype=np.int64), k=int(hyper["k"]))

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        k = min(self.k, self.X.shape[0])
        sq_train = np.einsum("ij,ij->i", self.X, self.X)
        out = np.empty(X.shape[0], dtype=np.int64)
        for lo in range(0, X.shape[0], _CHUNK):
            chunk = X[lo:lo + _CHUNK]
            d2 = (sq_train[None, :] - 2.0 * (chunk @ self.X.T)
                  + np.einsum("ij,ij->i", chunk, chunk)[:, None])
            nearest = np.argpartition(d2, k - 1, axis=1)[:, :k]
            votes = self.y[nearest].sum(axis=1)
            out[lo:lo + _CHUNK] = (votes * 2 > k).astype(np.int64)
        return out

    def to_state(self):
        return {"X": self.X.tolist(), "y": self.y.tolist(), "k": self.k}

    @classmethod
    def from_state(cls, state):
        return cls(np.array(state["X"], dtype=np.float64),
                   np.array(state["y"], dtype=np.int64), int(state["k"]))
