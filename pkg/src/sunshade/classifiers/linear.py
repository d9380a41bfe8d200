"""Logistic regression, LDA, and QDA."""

from __future__ import annotations

import warnings

import numpy as np

from sunshade.errors import ConvergenceWarning


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_objective_grad(w, b, X, y, C):
    """L2-regularized logistic loss 0.5 w'w + C sum log(1+e^{-t z}) and
    its gradient w.r.t. (w, b). The intercept is not penalized."""
    z = X @ w + b
    t = 2.0 * y - 1.0
    m = -t * z
    # log(1 + e^m) computed stably
    loss = float(np.logaddexp(0.0, m).sum())
    obj = 0.5 * float(w @ w) + C * loss
    p = _sigmoid(z)
    r = p - y
    gw = w + C * (X.T @ r)
    gb = C * float(r.sum())
    return obj, gw, gb


class LogisticModel:
    """Binary logistic regression fitted by Newton's method with
    backtracking, run to a small gradient norm."""

    def __init__(self, w, b, iterations, converged):
        self.w = w
        self.b = b
        self.iterations = iterations
        self.converged = converged

    @classmethod
    def fit(cls, X, y, hyper, seed):
        C = float(hyper["C"])
        tol = float(hyper["tol"])
        max_iter = int(hyper["max_iter"])
        n, d = X.shape
        w = np.zeros(d)
        b = 0.0
        converged = False
        it = 0
        obj, gw, gb = logistic_objective_grad(w, b, X, y, C)
        for it in range(1, max_iter + 1):
            gnorm = float(np.sqrt(gw @ gw + gb * gb))
            if gnorm <= tol:
                converged = True
                break
            p = _sigmoid(X @ w + b)
            wt = np.maximum(p * (1.0 - p), 1e-12)
            Xw = X * wt[:, None]
            H = np.empty((d + 1, d + 1))
            H[:d, :d] = C * (X.T @ Xw) + np.eye(d)
            H[:d, d] = C * Xw.sum(axis=0)
            H[d, :d] = H[:d, d]
            H[d, d] = C * float(wt.sum()) + 1e-12
            g = np.concatenate([gw, [gb]])
            step = np.linalg.solve(H, g)
            scale = 1.0
            for _ in range(30):
                w_new = w - scale * step[:d]
                b_new = b - scale * float(step[d])
                obj_new, gw_new, gb_new = logistic_objective_grad(
                    w_new, b_new, X, y, C)
                if obj_new <= obj:
                    break
                scale *= 0.5
            w, b, obj, gw, gb = w_new, b_new, obj_new, gw_new, gb_new
        else:
            it = max_iter
        if not converged:
            gnorm = float(np.sqrt(gw @ gw + gb * gb))
            if gnorm <= tol:
                converged = True
            else:
                warnings.warn(
                    f"logistic regression stopped at gradient norm "
                    f"{gnorm:.2e} after {it} iterations",
                    ConvergenceWarning)
        return cls(w=w, b=float(b), iterations=it, converged=converged)

    def decision_function(self, X):
        return X @ self.w + self.b

    def predict(self, X):
        return (self.decision_function(np.asarray(X, dtype=np.float64))
                > 0.0).astype(np.int64)

    def to_state(self):
        return {"w": self.w.tolist(), "b": self.b,
                "iterations": self.iterations, "converged": self.converged}

    @classmethod
    def from_state(cls, state):
        return cls(np.array(state["w"], dtype=np.float64), state["b"],
                   state["iterations"], state["converged"])


class LdaModel:
    """Linear discriminant analysis with pooled covariance, no shrinkage.
    Decision is linear; the threshold includes the class-prior term."""

    def __init__(self, w, b):
        self.w = w
        self.b = b

    @classmethod
    def fit(cls, X, y, hyper, seed):
        n = X.shape[0]
        X0, X1 = X[y == 0], X[y == 1]
        mu0 = X0.mean(axis=0)
        mu1 = X1.mean(axis=0)
        d0 = X0 - mu0
        d1 = X1 - mu1
        pooled = (d0.T @ d0 + d1.T @ d1) / max(n - 2, 1)
        pooled = pooled + 1e-12 * np.eye(X.shape[1])
        w = np.linalg.solve(pooled, mu1 - mu0)
        prior_term = float(np.log(len(X1) / len(X0)))
        b = -0.5 * float(w @ (mu0 + mu1)) + prior_term
        return cls(w=w, b=b)

    def decision_function(self, X):
        return X @ self.w + self.b

    def predict(self, X):
        return (self.decision_function(np.asarray(X, dtype=np.float64))
                > 0.0).astype(np.int64)

    def to_state(self):
        return {"w": self.w.tolist(), "b": self.b}

    @classmethod
    def from_state(cls, state):
        return cls(np.array(state["w"], dtype=np.float64), state["b"])


class QdaModel:
    """Quadratic discriminant analysis: per-class Gaussian with its own
    covariance, ridge-stabilized on the diagonal."""

    def __init__(self, means, covs, log_priors):
        self.means = means
        self.covs = covs
        self.log_priors = log_priors
        self._factors = [self._prepare(c) for c in covs]

    @staticmethod
    def _prepare(cov):
        sign, logdet = np.linalg.slogdet(cov)
        inv = np.linalg.inv(cov)
        return logdet, inv

    @classmethod
    def fit(cls, X, y, hyper, seed):
        ridge = float(hyper["ridge"])
        d = X.shape[1]
        means, covs, log_priors = [], [], []
        for cls_id in (0, 1):
            Xc = X[y == cls_id]
            mu = Xc.mean(axis=0)
            diff = Xc - mu
            denom = max(len(Xc) - 1, 1)
            cov = diff.T @ diff / denom + ridge * np.eye(d)
            means.append(mu)
            covs.append(cov)
            log_priors.append(float(np.log(len(Xc) / X.shape[0])))
        return cls(means=means, covs=covs, log_priors=log_priors)

    def _scores(self, X):
        scores = np.empty((X.shape[0], 2))
        for k in (0, 1):
            logdet, inv = self._factors[k]
            diff = X - self.means[k]
            maha = np.einsum("ij,jk,ik->i", diff, inv, diff)
            scores[:, k] = -0.5 * (logdet + maha) + self.log_priors[k]
        return scores

    def predict(self, X):
        s = self._scores(np.asarray(X, dtype=np.float64))
        return (s[:, 1] > s[:, 0]).astype(np.int64)

    def to_state(self):
        return {"means": [m.tolist() for m in self.means],
                "covs": [c.tolist() for c in self.covs],
                "log_priors": self.log_priors}

    @classmethod
    def from_state(cls, state):
        return cls([np.array(m, dtype=np.float64) for m in state["means"]],
                   [np.array(c, dtype=np.float64) for c in state["covs"]],
                   [float(p) for p in state["log_priors"]])
