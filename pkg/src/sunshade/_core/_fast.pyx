# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled backend for the numeric hot kernels.

Port of `sunshade._core.pure` with identical algorithms and tie-breaking:
`build_tree` output is bit-for-bit equal to the pure backend, `smo_solve`
agrees to floating-point roundoff (summation order differs from BLAS).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY as INFINITY_C
from libc.math cimport exp, pow, tanh
from libc.stdlib cimport free, malloc

cnp.import_array()

KERNEL_LINEAR = 0
KERNEL_POLY = 1
KERNEL_RBF = 2
KERNEL_SIGMOID = 3

cdef double _TAU = 1e-12

ctypedef unsigned long long u64

cdef u64 _XS_MULT = 2685821657736338717ULL


cdef inline u64 _xs_init(u64 seed) nogil:
    cdef u64 state = seed * _XS_MULT
    if state == 0:
        state = 0x9E3779B97F4A7C15ULL
    return state


cdef inline u64 _xs_next(u64* state) nogil:
    cdef u64 s = state[0]
    s ^= s >> 12
    s ^= s << 25
    s ^= s >> 27
    state[0] = s
    return s * _XS_MULT


# ---------------------------------------------------------------------------
# SMO solver
# ---------------------------------------------------------------------------

cdef inline double _krow_one(const double* xi, const double* xt, int d,
                             int kernel_id, double gamma, double coef0,
                             double degree, double sq_i,
                             double sq_t) nogil:
    cdef double dot = 0.0
    cdef int k
    for k in range(d):
        dot += xi[k] * xt[k]
    if kernel_id == 0:
        return dot
    if kernel_id == 1:
        return pow(gamma * dot + coef0, degree)
    if kernel_id == 2:
        return exp(-gamma * (sq_i + sq_t - 2.0 * dot))
    return tanh(gamma * dot + coef0)


cdef int _fetch_row(double[:, ::1] X, double[::1] sq, int t, int n, int d,
                    int kernel_id, double gamma, double coef0,
                    double degree, double[:, ::1] cache_data,
                    long[::1] slot_of_row, long[::1] row_of_slot,
                    long[::1] slot_age, long* age_counter,
                    int cap_rows) nogil:
    """Slot index of kernel row t, computing and caching it on a miss."""
    cdef int slot, s, i
    cdef long best_age
    age_counter[0] += 1
    slot = <int> slot_of_row[t]
    if slot >= 0:
        slot_age[slot] = age_counter[0]
        return slot
    # evict least recently used slot
    slot = 0
    best_age = slot_age[0]
    for s in range(1, cap_rows):
        if slot_age[s] < best_age:
            best_age = slot_age[s]
            slot = s
    if row_of_slot[slot] >= 0:
        slot_of_row[row_of_slot[slot]] = -1
    row_of_slot[slot] = t
    slot_of_row[t] = slot
    slot_age[slot] = age_counter[0]
    for i in range(n):
        cache_data[slot, i] = _krow_one(&X[i, 0], &X[t, 0], d, kernel_id,
                                        gamma, coef0, degree, sq[i], sq[t])
    return slot


def smo_solve(X, y, double C, int kernel_id, double gamma, double coef0,
              double degree, double tol, long max_passes,
              double cache_mb=384.0):
    """See `sunshade._core.pure.smo_solve`."""
    cdef double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(
        np.asarray(y, dtype=np.float64))
    cdef int n = Xv.shape[0]
    cdef int d = Xv.shape[1]
    cdef int i, j, t, k, slot_i, slot_j
    cdef long iterations = 0, age_counter = 0
    cdef long max_iter = max_passes * <long> n
    cdef bint converged = False

    sq_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] sq = sq_arr
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(d):
            acc += Xv[i, k] * Xv[i, k]
        sq[i] = acc

    diag_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] diag = diag_arr
    for i in range(n):
        diag[i] = _krow_one(&Xv[i, 0], &Xv[i, 0], d, kernel_id, gamma,
                            coef0, degree, sq[i], sq[i])

    alpha_arr = np.zeros(n, dtype=np.float64)
    grad_arr = np.full(n, -1.0, dtype=np.float64)
    cdef double[::1] alpha = alpha_arr
    cdef double[::1] grad = grad_arr

    cdef int cap_rows = <int> max(2.0, cache_mb * 1e6 / (8.0 * n))
    if cap_rows > n:
        cap_rows = n
    cache_data_arr = np.empty((cap_rows, n), dtype=np.float64)
    cdef double[:, ::1] cache_data = cache_data_arr
    slot_of_row_arr = np.full(n, -1, dtype=np.int64)
    row_of_slot_arr = np.full(cap_rows, -1, dtype=np.int64)
    slot_age_arr = np.zeros(cap_rows, dtype=np.int64)
    cdef long[::1] slot_of_row = slot_of_row_arr
    cdef long[::1] row_of_slot = row_of_slot_arr
    cdef long[::1] slot_age = slot_age_arr

    cdef double m_val, big_m, v_t, a, b, gain, best_gain, s, hi_i, hi_j
    cdef bint any_up, any_low

    with nogil:
        while iterations < max_iter:
            iterations += 1
            # working-set selection: i = argmax violation over I_up
            m_val = -INFINITY_C
            big_m = INFINITY_C
            i = -1
            any_up = False
            any_low = False
            for t in range(n):
                v_t = -yv[t] * grad[t]
                if (yv[t] > 0.0 and alpha[t] < C) or \
                        (yv[t] < 0.0 and alpha[t] > 0.0):
                    any_up = True
                    if v_t > m_val:
                        m_val = v_t
                        i = t
                if (yv[t] > 0.0 and alpha[t] > 0.0) or \
                        (yv[t] < 0.0 and alpha[t] < C):
                    any_low = True
                    if v_t < big_m:
                        big_m = v_t
            if not any_up or not any_low:
                converged = True
                break
            if m_val - big_m <= tol:
                converged = True
                break

            slot_i = _fetch_row(Xv, sq, i, n, d, kernel_id, gamma, coef0,
                                degree, cache_data, slot_of_row,
                                row_of_slot, slot_age, &age_counter,
                                cap_rows)
            # second-order choice of j over I_low with violation < m
            j = -1
            best_gain = -INFINITY_C
            for t in range(n):
                if (yv[t] > 0.0 and alpha[t] > 0.0) or \
                        (yv[t] < 0.0 and alpha[t] < C):
                    v_t = -yv[t] * grad[t]
                    if v_t < m_val:
                        b = m_val - v_t
                        a = diag[i] + diag[t] - 2.0 * cache_data[slot_i, t]
                        if a <= 0.0:
                            a = _TAU
                        gain = (b * b) / a
                        if gain > best_gain:
                            best_gain = gain
                            j = t
            if j < 0:
                converged = True
                break

            a = diag[i] + diag[j] - 2.0 * cache_data[slot_i, j]
            if a <= 0.0:
                a = _TAU
            s = (m_val - (-yv[j] * grad[j])) / a
            hi_i = C - alpha[i] if yv[i] > 0.0 else alpha[i]
            hi_j = alpha[j] if yv[j] > 0.0 else C - alpha[j]
            if hi_i < s:
                s = hi_i
            if hi_j < s:
                s = hi_j
            if s <= 0.0:
                break
            slot_j = _fetch_row(Xv, sq, j, n, d, kernel_id, gamma, coef0,
                                degree, cache_data, slot_of_row,
                                row_of_slot, slot_age, &age_counter,
                                cap_rows)
            slot_i = <int> slot_of_row[i]  # may have been evicted
            if slot_i < 0:
                slot_i = _fetch_row(Xv, sq, i, n, d, kernel_id, gamma,
                                    coef0, degree, cache_data, slot_of_row,
                                    row_of_slot, slot_age, &age_counter,
                                    cap_rows)
            alpha[i] += yv[i] * s
            alpha[j] -= yv[j] * s
            for t in range(n):
                grad[t] += (s * yv[t]) * (cache_data[slot_i, t]
                                          - cache_data[slot_j, t])

    # bias from free support vectors, else the violation midpoint
    cdef double v_sum = 0.0
    cdef long n_free = 0
    cdef double bias
    for t in range(n):
        if 0.0 < alpha[t] < C:
            v_sum += -yv[t] * grad[t]
            n_free += 1
    if n_free > 0:
        bias = v_sum / n_free
    else:
        m_val = -INFINITY_C
        big_m = INFINITY_C
        for t in range(n):
            v_t = -yv[t] * grad[t]
            if (yv[t] > 0.0 and alpha[t] < C) or \
                    (yv[t] < 0.0 and alpha[t] > 0.0):
                if v_t > m_val:
                    m_val = v_t
            if (yv[t] > 0.0 and alpha[t] > 0.0) or \
                    (yv[t] < 0.0 and alpha[t] < C):
                if v_t < big_m:
                    big_m = v_t
        if m_val == -INFINITY_C:
            m_val = 0.0
        if big_m == INFINITY_C:
            big_m = 0.0
        bias = (m_val + big_m) / 2.0
    return alpha_arr, float(bias), int(iterations), bool(converged)


# ---------------------------------------------------------------------------
# CART tree builder
# ---------------------------------------------------------------------------

cdef void _sort_pair(double* vals, int* labs, int lo, int hi) nogil:
    """Quicksort of vals[lo:hi+1] with labs permuted alongside."""
    cdef int i, j, mid, tl
    cdef double pivot, tv
    while hi - lo > 12:
        mid = lo + (hi - lo) // 2
        # median of three -> place pivot at lo
        if vals[mid] < vals[lo]:
            tv = vals[mid]; vals[mid] = vals[lo]; vals[lo] = tv
            tl = labs[mid]; labs[mid] = labs[lo]; labs[lo] = tl
        if vals[hi] < vals[lo]:
            tv = vals[hi]; vals[hi] = vals[lo]; vals[lo] = tv
            tl = labs[hi]; labs[hi] = labs[lo]; labs[lo] = tl
        if vals[hi] < vals[mid]:
            tv = vals[hi]; vals[hi] = vals[mid]; vals[mid] = tv
            tl = labs[hi]; labs[hi] = labs[mid]; labs[mid] = tl
        pivot = vals[mid]
        i = lo
        j = hi
        while i <= j:
            while vals[i] < pivot:
                i += 1
            while vals[j] > pivot:
                j -= 1
            if i <= j:
                tv = vals[i]; vals[i] = vals[j]; vals[j] = tv
                tl = labs[i]; labs[i] = labs[j]; labs[j] = tl
                i += 1
                j -= 1
        if j - lo < hi - i:
            _sort_pair(vals, labs, lo, j)
            lo = i
        else:
            _sort_pair(vals, labs, i, hi)
            hi = j
    # insertion sort for small ranges
    for i in range(lo + 1, hi + 1):
        tv = vals[i]
        tl = labs[i]
        j = i - 1
        while j >= lo and vals[j] > tv:
            vals[j + 1] = vals[j]
            labs[j + 1] = labs[j]
            j -= 1
        vals[j + 1] = tv
        labs[j + 1] = tl


def build_tree(X, y, int max_features, int min_samples_split, seed):
    """See `sunshade._core.pure.build_tree`. Bit-identical output."""
    cdef double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef long[::1] yv = np.ascontiguousarray(np.asarray(y, dtype=np.int64))
    cdef int n = Xv.shape[0]
    cdef int d = Xv.shape[1]
    cdef bint use_subset = 0 < max_features < d
    cdef u64 state = _xs_init(<u64> <unsigned long long> int(seed))
    cdef u64 r

    cdef int cap = 2 * n + 3
    feature_arr = np.zeros(cap, dtype=np.int32)
    threshold_arr = np.zeros(cap, dtype=np.float64)
    left_arr = np.full(cap, -1, dtype=np.int32)
    right_arr = np.full(cap, -1, dtype=np.int32)
    counts_arr = np.zeros((cap, 2), dtype=np.int64)
    cdef int[::1] feature = feature_arr
    cdef double[::1] threshold = threshold_arr
    cdef int[::1] left = left_arr
    cdef int[::1] right = right_arr
    cdef long[:, ::1] counts = counts_arr
    cdef int n_nodes = 1

    idx_arr = np.arange(n, dtype=np.int64)
    cdef long[::1] idx = idx_arr
    tmp_arr = np.empty(n, dtype=np.int64)
    cdef long[::1] tmp = tmp_arr

    # stack of (start, end, node_id)
    stack_arr = np.empty((2 * n + 3, 3), dtype=np.int64)
    cdef long[:, ::1] stack = stack_arr
    cdef int top = 0
    stack[0, 0] = 0
    stack[0, 1] = n
    stack[0, 2] = 0
    top = 1

    cdef int* pool = <int*> malloc(d * sizeof(int))
    cdef double* vals = <double*> malloc(n * sizeof(double))
    cdef int* labs = <int*> malloc(n * sizeof(int))
    if pool == NULL or vals == NULL or labs == NULL:
        if pool != NULL: free(pool)
        if vals != NULL: free(vals)
        if labs != NULL: free(labs)
        raise MemoryError()

    cdef int start, end, node, m, c1, c0, nf, fi, f, i, j, k_left
    cdef int best_feature, left_id, right_id, pos
    cdef long nl, nr, l1, l0, r1, r0, tot1
    cdef double best_score, best_threshold, score, thr, tv
    cdef int tl

    try:
        while top > 0:
            top -= 1
            start = <int> stack[top, 0]
            end = <int> stack[top, 1]
            node = <int> stack[top, 2]
            m = end - start
            c1 = 0
            for i in range(start, end):
                c1 += <int> yv[idx[i]]
            c0 = m - c1
            counts[node, 0] = c0
            counts[node, 1] = c1
            if c0 == 0 or c1 == 0 or m < min_samples_split:
                feature[node] = -1
                continue

            # feature subset (sorted ascending), matching the pure backend
            if use_subset:
                for i in range(d):
                    pool[i] = i
                for i in range(max_features):
                    r = _xs_next(&state)
                    j = i + <int> (r % <u64> (d - i))
                    tl = pool[i]; pool[i] = pool[j]; pool[j] = tl
                for i in range(1, max_features):
                    tl = pool[i]
                    j = i - 1
                    while j >= 0 and pool[j] > tl:
                        pool[j + 1] = pool[j]
                        j -= 1
                    pool[j + 1] = tl
                nf = max_features
            else:
                for i in range(d):
                    pool[i] = i
                nf = d

            best_score = -INFINITY_C
            best_feature = -1
            best_threshold = 0.0
            tot1 = c1
            for fi in range(nf):
                f = pool[fi]
                for i in range(m):
                    vals[i] = Xv[idx[start + i], f]
                    labs[i] = <int> yv[idx[start + i]]
                _sort_pair(vals, labs, 0, m - 1)
                l1 = 0
                for i in range(m - 1):
                    l1 += labs[i]
                    if vals[i + 1] > vals[i]:
                        nl = i + 1
                        nr = m - nl
                        l0 = nl - l1
                        r1 = tot1 - l1
                        r0 = nr - r1
                        score = (<double> (l0 * l0 + l1 * l1)) / nl \
                            + (<double> (r0 * r0 + r1 * r1)) / nr
                        if score > best_score:
                            best_score = score
                            best_feature = f
                            best_threshold = (vals[i] + vals[i + 1]) / 2.0
            if best_feature < 0:
                feature[node] = -1
                continue

            # stable partition of idx[start:end] by value <= threshold
            f = best_feature
            thr = best_threshold
            pos = 0
            for i in range(start, end):
                if Xv[idx[i], f] <= thr:
                    tmp[pos] = idx[i]
                    pos += 1
            k_left = pos
            for i in range(start, end):
                if Xv[idx[i], f] > thr:
                    tmp[pos] = idx[i]
                    pos += 1
            for i in range(m):
                idx[start + i] = tmp[i]

            left_id = n_nodes
            right_id = n_nodes + 1
            n_nodes += 2
            feature[node] = f
            threshold[node] = thr
            left[node] = left_id
            right[node] = right_id
            stack[top, 0] = start + k_left
            stack[top, 1] = end
            stack[top, 2] = right_id
            top += 1
            stack[top, 0] = start
            stack[top, 1] = start + k_left
            stack[top, 2] = left_id
            top += 1
    finally:
        free(pool)
        free(vals)
        free(labs)

    return (feature_arr[:n_nodes].copy(), threshold_arr[:n_nodes].copy(),
            left_arr[:n_nodes].copy(), right_arr[:n_nodes].copy(),
            counts_arr[:n_nodes].copy())
