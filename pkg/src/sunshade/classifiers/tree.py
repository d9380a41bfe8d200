"""CART decision tree and bootstrap random forest."""

from __future__ import annotations

import math

import numpy as np

from sunshade import _core


def _traverse(feature, threshold, left, right, X):
    """Leaf index for every row of X."""
    nodes = np.zeros(X.shape[0], dtype=np.int64)
    while True:
        f = feature[nodes]
        active = np.nonzero(f >= 0)[0]
        if active.size == 0:
            return nodes
        cur = nodes[active]
        go_left = X[active, f[active]] <= threshold[cur]
        nodes[active] = np.where(go_left, left[cur], right[cur])


class DecisionTreeModel:
    """Unpruned CART on Gini impurity. Leaves predict the majority class,
    ties toward class 0 (shade)."""

    def __init__(self, feature, threshold, left, right, counts):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.counts = counts

    @classmethod
    def fit(cls, X, y, hyper, seed):
        arrays = _core.build_tree(X, y, 0,
                                  int(hyper["min_samples_split"]), 0)
        return cls(*arrays)

    def leaf_proportions(self, X):
        leaf = _traverse(self.feature, self.threshold, self.left,
                         self.right, X)
        c = self.counts[leaf].astype(np.float64)
        return c / c.sum(axis=1, keepdims=True)

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        p = self.leaf_proportions(X)
        return (p[:, 1] > p[:, 0]).astype(np.int64)

    def to_state(self):
        return {"feature": self.feature.tolist(),
                "threshold": self.threshold.tolist(),
                "left": self.left.tolist(), "right": self.right.tolist(),
                "counts": self.counts.tolist()}

    @classmethod
    def from_state(cls, state):
        return cls(np.array(state["feature"], dtype=np.int32),
                   np.array(state["threshold"], dtype=np.float64),
                   np.array(state["left"], dtype=np.int32),
                   np.array(state["right"], dtype=np.int32),
                   np.array(state["counts"], dtype=np.int64))


class RandomForestModel:
    """Bootstrap ensemble of CART trees with per-node feature subsets
    (sqrt of the feature count by default). Prediction averages per-tree
    leaf class proportions; ties go to class 0."""

    def __init__(self, trees):
        self.trees = trees

    @classmethod
    def fit(cls, X, y, hyper, seed):
        n, d = X.shape
        mf = hyper.get("max_features", "sqrt")
        max_features = int(math.sqrt(d)) if mf == "sqrt" else int(mf)
        max_features = max(1, min(max_features, d))
        rng = np.random.Generator(np.random.PCG64(seed))
        trees = []
        for _ in range(int(hyper["n_trees"])):
            idx = rng.integers(0, n, size=n)
            tree_seed = int(rng.integers(1, 2 ** 62))
            arrays = _core.build_tree(
                np.ascontiguousarray(X[idx]), y[idx], max_features,
                int(hyper["min_samples_split"]), tree_seed)
            trees.append(DecisionTreeModel(*arrays))
        return cls(trees)

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        total = np.zeros((X.shape[0], 2))
        for tree in self.trees:
            total += tree.leaf_proportions(X)
        return (total[:, 1] > total[:, 0]).astype(np.int64)

    def to_state(self):
        return {"trees": [t.to_state() for t in self.trees]}

    @classmethod
    def from_state(cls, state):
        return cls([DecisionTreeModel.from_state(s)
                    for s in state["trees"]])
