"""SVM kernel functions: linear, polynomial, RBF, sigmoid."""

from __future__ import annotations

import numpy as np

from sunshade.errors import DimensionError

KERNEL_IDS = {"linear": 0, "poly": 1, "rbf": 2, "sigmoid": 3}


def kernel(kind: str, x, z, params: dict | None = None) -> float:
    """Scalar kernel value between two equal-length vectors.

    linear: <x,z>; poly: (g<x,z>+r)^d; rbf: exp(-g||x-z||^2);
    sigmoid: tanh(g<x,z>+r). params supplies gamma/coef0/degree.
    """
    params = params or {}
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if x.shape != z.shape:
        raise DimensionError(f"kernel inputs {x.shape} vs {z.shape}")
    gamma = float(params.get("gamma", 1.0))
    coef0 = float(params.get("coef0", 0.0))
    degree = float(params.get("degree", 3))
    dot = float(x @ z)
    if kind == "linear":
        return dot
    if kind == "poly":
        return (gamma * dot + coef0) ** degree
    if kind == "rbf":
        diff = x - z
        return float(np.exp(-gamma * (diff @ diff)))
    if kind == "sigmoid":
        return float(np.tanh(gamma * dot + coef0))
    raise ValueError(f"unknown kernel kind {kind!r}")


def kernel_matrix(kind: str, A: np.ndarray, B: np.ndarray, gamma: float,
                  coef0: float, degree: float) -> np.ndarray:
    """K[i, j] = k(A[i], B[j]) computed with matrix products."""
    dots = A @ B.T
    if kind == "linear":
        return dots
    if kind == "poly":
        return (gamma * dots + coef0) ** degree
    if kind == "rbf":
        sq_a = np.einsum("ij,ij->i", A, A)[:, None]
        sq_b = np.einsum("ij,ij->i", B, B)[None, :]
        return np.exp(-gamma * (sq_a + sq_b - 2.0 * dots))
    if kind == "sigmoid":
        return np.tanh(gamma * dots + coef0)
    raise ValueError(f"unknown kernel kind {kind!r}")


def resolve_gamma(gamma, X: np.ndarray) -> float:
    """'scale' -> 1 / (n_features * var(X)); numbers pass through."""
    if gamma == "scale":
        var = float(X.var())
        if var <= 0.0:
            return 1.0
        return 1.0 / (X.shape[1] * var)
    return float(gamma)
