"""Hot numeric kernels for tree training and prediction.

Two implementations of each kernel: a numba @njit version and a vectorized
numpy fallback. The numba path is used when numba imports and the
PITCHGATE_NO_NUMBA environment variable is unset; both compute identical
arithmetic (integer class counts, elementwise impurity) so a given dataset
yields the same tree either way.

Split semantics: candidate thresholds are midpoints of sorted distinct
values, rows with x <= threshold go left, both sides must keep at least
min_leaf rows. Ties in impurity resolve to the lowest feature index, then
the lowest threshold.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("PITCHGATE_NO_NUMBA", "") not in ("", "0")

try:  # pragma: no cover - exercised via the dispatch below
    if _DISABLE:
        raise ImportError("numba disabled by PITCHGATE_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


def _best_split_gini_py(X, y, feat_ids, min_leaf):
    n = X.shape[0]
    best_feat = -1
    best_thr = 0.0
    best_imp = np.inf
    for j in feat_ids:
        x = X[:, j]
        order = np.argsort(x)
        xs = x[order]
        ys = y[order]
        pos_prefix = np.cumsum(ys)
        total_pos = int(pos_prefix[-1])
        # Candidate i splits between sorted rows i and i+1.
        i = np.arange(n - 1)
        distinct = xs[:-1] != xs[1:]
        n_left = i + 1
        n_right = n - n_left
        valid = distinct & (n_left >= min_leaf) & (n_right >= min_leaf)
        if not np.any(valid):
            continue
        pos_left = pos_prefix[:-1]
        pos_right = total_pos - pos_left
        pl1 = pos_left / n_left
        pl0 = (n_left - pos_left) / n_left
        pr1 = pos_right / n_right
        pr0 = (n_right - pos_right) / n_right
        gini_left = 1.0 - pl1 * pl1 - pl0 * pl0
        gini_right = 1.0 - pr1 * pr1 - pr0 * pr0
        weighted = (n_left * gini_left + n_right * gini_right) / n
        weighted = np.where(valid, weighted, np.inf)
        k = int(np.argmin(weighted))
        if weighted[k] < best_imp:
            best_imp = float(weighted[k])
            best_feat = int(j)
            best_thr = (xs[k] + xs[k + 1]) / 2.0
    return best_feat, best_thr, best_imp


@njit(cache=True)
def _best_split_gini_nb(X, y, feat_ids, min_leaf):  # pragma: no cover - jit
    n = X.shape[0]
    best_feat = -1
    best_thr = 0.0
    best_imp = np.inf
    for jj in range(feat_ids.shape[0]):
        j = feat_ids[jj]
        x = X[:, j]
        order = np.argsort(x)
        pos = 0
        total_pos = 0
        for i in range(n):
            total_pos += y[order[i]]
        for i in range(n - 1):
            pos += y[order[i]]
            xi = x[order[i]]
            xn = x[order[i + 1]]
            if xi == xn:
                continue
            n_left = i + 1
            n_right = n - n_left
            if n_left < min_leaf or n_right < min_leaf:
                continue
            pos_left = pos
            pos_right = total_pos - pos
            pl1 = pos_left / n_left
            pl0 = (n_left - pos_left) / n_left
            pr1 = pos_right / n_right
            pr0 = (n_right - pos_right) / n_right
            gini_left = 1.0 - pl1 * pl1 - pl0 * pl0
            gini_right = 1.0 - pr1 * pr1 - pr0 * pr0
            weighted = (n_left * gini_left + n_right * gini_right) / n
            if weighted < best_imp:
                best_imp = weighted
                best_feat = j
                best_thr = (xi + xn) / 2.0
    return best_feat, best_thr, best_imp


def _best_split_sse_py(X, r, feat_ids, min_leaf):
    n = X.shape[0]
    best_feat = -1
    best_thr = 0.0
    best_sse = np.inf
    for j in feat_ids:
        x = X[:, j]
        order = np.argsort(x)
        xs = x[order]
        rs = r[order]
        sum_prefix = np.cumsum(rs)
        sq_prefix = np.cumsum(rs * rs)
        total_sum = sum_prefix[-1]
        total_sq = sq_prefix[-1]
        i = np.arange(n - 1)
        distinct = xs[:-1] != xs[1:]
        n_left = i + 1
        n_right = n - n_left
        valid = distinct & (n_left >= min_leaf) & (n_right >= min_leaf)
        if not np.any(valid):
            continue
        sum_left = sum_prefix[:-1]
        sq_left = sq_prefix[:-1]
        sum_right = total_sum - sum_left
        sq_right = total_sq - sq_left
        sse = (sq_left - sum_left * sum_left / n_left) + (
            sq_right - sum_right * sum_right / n_right
        )
        sse = np.where(valid, sse, np.inf)
        k = int(np.argmin(sse))
        if sse[k] < best_sse:
            best_sse = float(sse[k])
            best_feat = int(j)
            best_thr = (xs[k] + xs[k + 1]) / 2.0
    return best_feat, best_thr, best_sse


@njit(cache=True)
def _best_split_sse_nb(X, r, feat_ids, min_leaf):  # pragma: no cover - jit
    n = X.shape[0]
    best_feat = -1
    best_thr = 0.0
    best_sse = np.inf
    for jj in range(feat_ids.shape[0]):
        j = feat_ids[jj]
        x = X[:, j]
        order = np.argsort(x)
        total_sum = 0.0
        total_sq = 0.0
        for i in range(n):
            v = r[order[i]]
            total_sum += v
            total_sq += v * v
        sum_left = 0.0
        sq_left = 0.0
        for i in range(n - 1):
            v = r[order[i]]
            sum_left += v
            sq_left += v * v
            xi = x[order[i]]
            xn = x[order[i + 1]]
            if xi == xn:
                continue
            n_left = i + 1
            n_right = n - n_left
            if n_left < min_leaf or n_right < min_leaf:
                continue
            sum_right = total_sum - sum_left
            sq_right = total_sq - sq_left
            sse = (sq_left - sum_left * sum_left / n_left) + (
                sq_right - sum_right * sum_right / n_right
            )
            if sse < best_sse:
                best_sse = sse
                best_feat = j
                best_thr = (xi + xn) / 2.0
    return best_feat, best_thr, best_sse


def _apply_tree_py(feature, threshold, left, right, X):
    n = X.shape[0]
    node = np.zeros(n, dtype=np.int64)
    while True:
        feat = feature[node]
        active = feat >= 0
        if not np.any(active):
            break
        rows = np.flatnonzero(active)
        cur = node[rows]
        x = X[rows, feat[rows]]
        go_left = x <= threshold[cur]
        node[rows] = np.where(go_left, left[cur], right[cur])
    return node


@njit(cache=True)
def _apply_tree_nb(feature, threshold, left, right, X):  # pragma: no cover - jit
    n = X.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = node
    return out


if HAVE_NUMBA:
    best_split_gini = _best_split_gini_nb
    best_split_sse = _best_split_sse_nb
    apply_tree = _apply_tree_nb
else:
    best_split_gini = _best_split_gini_py
    best_split_sse = _best_split_sse_py
    apply_tree = _apply_tree_py
