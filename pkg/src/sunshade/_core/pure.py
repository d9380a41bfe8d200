"""Pure NumPy backend for the numeric hot kernels.

Mirrors the compiled extension exactly:

* `smo_solve`, soft-margin SVM dual via SMO with second-order working-set
  selection and an LRU kernel-row cache;
* `build_tree`, CART on Gini impurity with integer class counts and an
  xorshift64* generator for per-node feature subsets, so grown trees are
  bit-identical across backends.
"""

from __future__ import annotations

from collections import OrderedDict

import numpy as np

KERNEL_LINEAR = 0
KERNEL_POLY = 1
KERNEL_RBF = 2
KERNEL_SIGMOID = 3

_TAU = 1e-12

_MASK64 = (1 << 64) - 1
_XS_MULT = 2685821657736338717


def kernel_row(X, sq_norms, t, kernel_id, gamma, coef0, degree):
    """Row t of the kernel matrix K(X, X[t])."""
    dots = X @ X[t]
    if kernel_id == KERNEL_LINEAR:
        return dots
    if kernel_id == KERNEL_POLY:
        return (gamma * dots + coef0) ** degree
    if kernel_id == KERNEL_RBF:
        return np.exp(-gamma * (sq_norms + sq_norms[t] - 2.0 * dots))
    if kernel_id == KERNEL_SIGMOID:
        return np.tanh(gamma * dots + coef0)
    raise ValueError(f"unknown kernel id {kernel_id}")


def _kernel_diag(X, sq_norms, kernel_id, gamma, coef0, degree):
    if kernel_id == KERNEL_LINEAR:
        return sq_norms.copy()
    if kernel_id == KERNEL_POLY:
        return (gamma * sq_norms + coef0) ** degree
    if kernel_id == KERNEL_RBF:
        return np.ones_like(sq_norms)
    if kernel_id == KERNEL_SIGMOID:
        return np.tanh(gamma * sq_norms + coef0)
    raise ValueError(f"unknown kernel id {kernel_id}")


def smo_solve(X, y, C, kernel_id, gamma, coef0, degree, tol, max_passes,
              cache_mb=384.0):
    """Maximal-violating-pair SMO for the SVM dual.

    Parameters: X (n, d) float64, y (n,) in {-1, +1}, box constraint C,
    kernel id/params, KKT stopping tolerance, and an iteration cap of
    `max_passes` sweeps (one sweep = n single-pair updates).

    Returns (alpha, bias, iterations, converged). The decision function is
    f(x) = sum_t alpha_t y_t K(x_t, x) + bias.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    sq_norms = np.einsum("ij,ij->i", X, X)
    diag = _kernel_diag(X, sq_norms, kernel_id, gamma, coef0, degree)

    alpha = np.zeros(n)
    grad = -np.ones(n)
    pos = y > 0.0

    cap_rows = max(2, int(cache_mb * 1e6 / (8.0 * n)))
    cache: OrderedDict[int, np.ndarray] = OrderedDict()

    def row(t):
        cached = cache.get(t)
        if cached is not None:
            cache.move_to_end(t)
            return cached
        if len(cache) >= cap_rows:
            cache.popitem(last=False)
        r = kernel_row(X, sq_norms, t, kernel_id, gamma, coef0, degree)
        cache[t] = r
        return r

    max_iter = int(max_passes) * n
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        viol = -y * grad
        up = (pos & (alpha < C)) | (~pos & (alpha > 0.0))
        low = (pos & (alpha > 0.0)) | (~pos & (alpha < C))
        if not up.any() or not low.any():
            converged = True
            break
        m_val = np.max(viol[up])
        big_m = np.min(viol[low])
        if m_val - big_m <= tol:
            converged = True
            break
        i = int(np.argmax(np.where(up, viol, -np.inf)))

        k_i = row(i)
        cand = low & (viol < m_val)
        b_vec = m_val - viol
        a_vec = diag[i] + diag - 2.0 * k_i
        a_vec = np.where(a_vec > 0.0, a_vec, _TAU)
        gain = np.where(cand, (b_vec * b_vec) / a_vec, -np.inf)
        j = int(np.argmax(gain))

        # Step s along the equality-preserving direction
        # (d_alpha_i, d_alpha_j) = (y_i s, -y_j s), then joint box clip.
        a = diag[i] + diag[j] - 2.0 * k_i[j]
        if a <= 0.0:
            a = _TAU
        s = (m_val - viol[j]) / a
        hi_i = C - alpha[i] if y[i] > 0 else alpha[i]
        hi_j = alpha[j] if y[j] > 0 else C - alpha[j]
        s = min(s, hi_i, hi_j)
        if s <= 0.0:
            break
        k_j = row(j)
        alpha[i] += y[i] * s
        alpha[j] -= y[j] * s
        grad += (s * y) * (k_i - k_j)

    free = (alpha > 0.0) & (alpha < C)
    viol = -y * grad
    if free.any():
        bias = float(np.mean(viol[free]))
    else:
        up = (pos & (alpha < C)) | (~pos & (alpha > 0.0))
        low = (pos & (alpha > 0.0)) | (~pos & (alpha < C))
        hi = np.max(viol[up]) if up.any() else 0.0
        lo = np.min(viol[low]) if low.any() else 0.0
        bias = float((hi + lo) / 2.0)
    return alpha, bias, iterations, converged


def xorshift_init(seed):
    """Initial xorshift64* state for an integer seed."""
    state = (int(seed) * _XS_MULT) & _MASK64
    if state == 0:
        state = 0x9E3779B97F4A7C15
    return state


def xorshift_next(state):
    """One xorshift64* step -> (new_state, 64-bit output)."""
    state ^= state >> 12
    state = (state ^ (state << 25)) & _MASK64
    state ^= state >> 27
    return state, (state * _XS_MULT) & _MASK64


def _feature_subset(pool, k, state):
    """Partial Fisher-Yates: pick k of len(pool) features, sorted."""
    d = len(pool)
    pool = list(pool)
    for i in range(k):
        state, r = xorshift_next(state)
        j = i + int(r % (d - i))
        pool[i], pool[j] = pool[j], pool[i]
    return sorted(pool[:k]), state


def _best_split(X, y, idx, features):
    """Best (score, feature, threshold) over `features` at this node.

    Score maximizes sum over children of (c0^2 + c1^2) / n_child, which is
    equivalent to minimizing weighted Gini impurity. Ties resolve to the
    lowest feature index, then the lowest threshold.
    """
    y_node = y[idx]
    best_score = -np.inf
    best_feature = -1
    best_threshold = 0.0
    n = idx.shape[0]
    for f in features:
        vals = X[idx, f]
        order = np.argsort(vals, kind="stable")
        sv = vals[order]
        c1 = np.cumsum(y_node[order], dtype=np.int64)
        tot1 = int(c1[-1])
        cut = np.nonzero(sv[1:] > sv[:-1])[0]
        if cut.size == 0:
            continue
        nl = (cut + 1).astype(np.int64)
        l1 = c1[cut]
        l0 = nl - l1
        nr = n - nl
        r1 = tot1 - l1
        r0 = nr - r1
        score = (l0 * l0 + l1 * l1) / nl + (r0 * r0 + r1 * r1) / nr
        k = int(np.argmax(score))
        if score[k] > best_score:
            best_score = float(score[k])
            best_feature = int(f)
            best_threshold = (sv[cut[k]] + sv[cut[k] + 1]) / 2.0
    return best_score, best_feature, best_threshold


def build_tree(X, y, max_features, min_samples_split, seed):
    """Grow an unpruned CART classifier on Gini impurity.

    max_features == 0 selects all features at every node (no RNG use);
    otherwise each node examines a random subset of that size drawn from
    an xorshift64* stream seeded by `seed`.

    Returns (feature, threshold, left, right, counts): flat node arrays,
    feature == -1 marking leaves, counts holding per-node class counts.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n, d = X.shape
    use_subset = 0 < max_features < d
    state = xorshift_init(seed)
    all_features = list(range(d))

    feature = [0]
    threshold = [0.0]
    left = [-1]
    right = [-1]
    counts = [(0, 0)]

    stack = [(np.arange(n, dtype=np.intp), 0)]
    while stack:
        idx, node = stack.pop()
        c1 = int(y[idx].sum())
        c0 = idx.shape[0] - c1
        counts[node] = (c0, c1)
        if c0 == 0 or c1 == 0 or idx.shape[0] < min_samples_split:
            feature[node] = -1
            continue
        if use_subset:
            feats, state = _feature_subset(all_features, max_features, state)
        else:
            feats = all_features
        score, f, thr = _best_split(X, y, idx, feats)
        if f < 0:
            feature[node] = -1
            continue
        mask = X[idx, f] <= thr
        left_id = len(feature)
        right_id = left_id + 1
        feature[node] = f
        threshold[node] = thr
        left[node] = left_id
        right[node] = right_id
        for _ in range(2):
            feature.append(0)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            counts.append((0, 0))
        stack.append((idx[~mask], right_id))
        stack.append((idx[mask], left_id))

    return (np.asarray(feature, dtype=np.int32),
            np.asarray(threshold, dtype=np.float64),
            np.asarray(left, dtype=np.int32),
            np.asarray(right, dtype=np.int32),
            np.asarray(counts, dtype=np.int64))
