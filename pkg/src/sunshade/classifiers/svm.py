"""Soft-margin kernel SVM trained by SMO dual ascent."""

from __future__ import annotations

import warnings

import numpy as np

from sunshade import _core
from sunshade.classifiers.kernels import KERNEL_IDS, kernel_matrix, \
    resolve_gamma
from sunshade.errors import ConvergenceWarning

_PREDICT_CHUNK = 2048


class SvmModel:
    """Fitted SVM: support vectors, their signed dual coefficients, and a
    bias. Decision f(x) = sum_t coef_t K(x_t, x) + bias; f > 0 predicts
    class 1, ties go to class 0."""

    def __init__(self, kind, gamma, coef0, degree, sv_X, sv_coef, bias,
                 iterations, converged):
        self.kind = kind
        self.gamma = gamma
        self.coef0 = coef0
        self.degree = degree
        self.sv_X = sv_X
        self.sv_coef = sv_coef
        self.bias = bias
        self.iterations = iterations
        self.converged = converged

    @classmethod
    def fit(cls, X, y, hyper, seed, kind):
        y_pm = np.where(np.asarray(y) > 0, 1.0, -1.0)
        gamma = resolve_gamma(hyper.get("gamma", "scale"), X) \
            if kind != "linear" else 0.0
        coef0 = float(hyper.get("coef0", 0.0))
        degree = float(hyper.get("degree", 3))
        alpha, bias, iterations, converged = _core.smo_solve(
            X, y_pm, float(hyper["C"]), KERNEL_IDS[kind], gamma, coef0,
            degree, float(hyper["tol"]), int(hyper["max_passes"]),
            float(hyper.get("cache_mb", 384.0)))
        if not converged:
            warnings.warn(
                f"SMO hit its iteration cap after {iterations} iterations "
                f"(kernel {kind}); returning the current iterate",
                ConvergenceWarning)
        support = alpha > 0.0
        return cls(kind=kind, gamma=gamma, coef0=coef0, degree=degree,
                   sv_X=np.ascontiguousarray(X[support]),
                   sv_coef=(alpha * y_pm)[support], bias=float(bias),
                   iterations=int(iterations), converged=bool(converged))

    def decision_function(self, X):
        X = np.asarray(X, dtype=np.float64)
        out = np.empty(X.shape[0])
        for lo in range(0, X.shape[0], _PREDICT_CHUNK):
            chunk = X[lo:lo + _PREDICT_CHUNK]
            k = kernel_matrix(self.kind, chunk, self.sv_X, self.gamma,
                              self.coef0, self.degree)
            out[lo:lo + _PREDICT_CHUNK] = k @ self.sv_coef + self.bias
        return out

    def predict(self, X):
        return (self.decision_function(X) > 0.0).astype(np.int64)

    def to_state(self):
        return {
            "kind": self.kind, "gamma": self.gamma, "coef0": self.coef0,
            "degree": self.degree, "bias": self.bias,
            "iterations": self.iterations, "converged": self.converged,
            "sv_X": self.sv_X.tolist(), "sv_coef": self.sv_coef.tolist(),
        }

    @classmethod
    def from_state(cls, state):
        return cls(kind=state["kind"], gamma=state["gamma"],
                   coef0=state["coef0"], degree=state["degree"],
                   sv_X=np.array(state["sv_X"], dtype=np.float64),
                   sv_coef=np.array(state["sv_coef"], dtype=np.float64),
                   bias=state["bias"], iterations=state["iterations"],
                   converged=state["converged"])
